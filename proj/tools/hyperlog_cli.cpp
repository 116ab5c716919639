#include "hyperlog/expr.hpp"

#include <CLI11.hpp>

#include <unistd.h>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

using namespace hyperlog;

namespace {

struct Session {
    Precision prec;
    Format format = Format::Text;
    bool had_error = false;
};

std::optional<Format> parse_format(const std::string& s)
{
    if (s == "text")
        return Format::Text;
    if (s == "latex")
        return Format::Latex;
    if (s == "json")
        return Format::Json;
    return std::nullopt;
}

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

void report(std::ostream& err, const Error& e, int line)
{
    err << "error: " << error_name(e.kind()) << ": ";
    if (auto se = dynamic_cast<const SyntaxError*>(&e); se && line > 0)
        err << "line " << line << ", col " << se->col() << ": " << se->detail();
    else
        err << e.what();
    err << "\n";
}

// Handles one input line; `line` is the 1-based script line, 0 for one-shot input.
void run_line(Session& s, const std::string& raw, int line, std::ostream& out, std::ostream& err)
{
    std::string text = trim(raw);
    if (text.empty() || text[0] == '#')
        return;
    if (text[0] == ':') {
        std::istringstream in(text.substr(1));
        std::string cmd, arg;
        in >> cmd >> arg;
        if (cmd == "prec") {
            try {
                int n = std::stoi(arg);
                if (n < 1 || n > 1000)
                    throw std::out_of_range("precision");
                s.prec = Precision(n);
                return;
            } catch (const std::exception&) {
            }
        } else if (cmd == "format") {
            if (auto f = parse_format(arg)) {
                s.format = *f;
                return;
            }
        }
        err << "error: TypeError: bad meta-command ':" << cmd << (arg.empty() ? "" : " " + arg) << "'\n";
        s.had_error = true;
        return;
    }
    try {
        out << format_value(evaluate(text, s.prec), s.format) << "\n";
    } catch (const Error& e) {
        report(err, e, line);
        s.had_error = true;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        s.had_error = true;
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact arithmetic, calculus and composition for logarithmic hyperseries"};
    int prec = 8;
    std::string format = "text";
    std::string expr;
    std::string script;
    app.add_option("--prec", prec, "Term budget for truncated expansions")->check(CLI::Range(1, 1000));
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "latex", "json"}));
    auto* eval_opt = app.add_option("--eval", expr, "Evaluate one expression and exit");
    app.add_option("--script", script, "Run a file of expressions, one per line")->excludes(eval_opt);
    CLI11_PARSE(app, argc, argv);

    Session s;
    s.prec = Precision(prec);
    s.format = *parse_format(format);

    if (!expr.empty()) {
        run_line(s, expr, 0, std::cout, std::cerr);
        return s.had_error ? 1 : 0;
    }

    std::ifstream file;
    std::istream* in = &std::cin;
    bool interactive = false;
    if (!script.empty()) {
        file.open(script);
        if (!file) {
            std::cerr << "error: cannot open " << script << "\n";
            return 1;
        }
        in = &file;
    } else {
        interactive = isatty(STDIN_FILENO);
    }

    // Scripts report errors inline with results so transcripts keep their order.
    std::ostream& err = interactive ? std::cerr : std::cout;
    std::string line;
    int number = 0;
    for (;;) {
        if (interactive)
            std::cout << "> " << std::flush;
        if (!std::getline(*in, line))
            break;
        run_line(s, line, ++number, std::cout, err);
    }
    if (interactive)
        std::cout << "\n";
    return !interactive && s.had_error ? 1 : 0;
}
