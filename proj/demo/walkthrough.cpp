// A short tour of the library API: ordinals, series, calculus, composition.

#include "hyperlog/composition.hpp"
#include "hyperlog/format.hpp"

#include <iostream>

using namespace hyperlog;

namespace {

Series L(const Ordinal& a)
{
    return Series::monomial(hyperlog_monomial(a));
}

void show(const char* label, const Series& s)
{
    std::cout << label << " = " << format_text(s) << "\n";
}

}  // namespace

int main()
{
    const Ordinal w = Ordinal::omega();
    const Precision prec(4);

    // Ordinal addition absorbs smaller left summands.
    Ordinal a = parse_ordinal("w^2+w*3+1");
    std::cout << "5 + w = " << to_string(ord_add(Ordinal(5), w)) << "\n";
    std::cout << "w^2+w*3+1 + w^2 = " << to_string(ord_add(a, omega_pow(2))) << "\n";

    // Series with a truncation bound.
    Series x = Series::monomial(identity_monomial());
    Series one_plus = Series::constant(1) + ser_mul_inverse(x, prec);
    show("log(1 + 1/x)", ser_log(one_plus, prec));
    show("1/(1 + 1/x)", ser_mul_inverse(one_plus, prec));

    // Calculus on transfinite hyperlogarithms.
    show("D(l_w)", derive(L(w), prec));
    show("int(l_1)", integrate(L(Ordinal(1)), prec));
    show("dagger(x l_1)", dagger(x * L(Ordinal(1)), prec));

    // Composition and its invariants.
    show("l_w o l_1", compose(L(w), L(Ordinal(1)), prec));
    show("l_{w^2} o l_w", compose(L(omega_pow(2)), L(w), prec));
    Series g = x * L(Ordinal(1)) + Series::constant(1);
    show("l_{w+1} o (x l_1 + 1)", compose(L(ord_succ(w)), g, prec));
    std::cout << "lambda(l_w o l_{w*2}) = "
              << to_string(*logarithmicity(compose(L(w), L(ord_add(w, w)), prec)).value) << "\n";

    // Functional inverse and a round trip.
    Series h = x + L(Ordinal(1));
    Series hi = invert(h, prec);
    show("inv(x + l_1)", hi);
    show("(x + l_1) o inv", compose(h, hi, prec));

    // Errors carry a kind.
    try {
        ser_log(Series::constant(2) * x, prec);
    } catch (const Error& e) {
        std::cout << "log(2x): " << error_name(e.kind()) << "\n";
    }
}
