#include <strata/report.hh>

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char ** argv)
{
    CLI::App app{"Stratified algebra analysis: tilting modules, Ringel duals and finitistic dimension bounds"};
    app.set_version_flag("--version", strata::version);
    std::vector<std::string> args;
    strata::AnalysisRequest req;
    std::string cache;
    bool as_json = false, as_text = false;
    app.add_option("args", args, "<command>... <file>; resolve takes a module spec such as P(1) or T(2)")->required();
    app.add_option("--seed", req.seed, "random seed")->default_val(1);
    app.add_option("--cap", req.cap, "resolution length cap")->default_val(strata::default_cap)->check(CLI::PositiveNumber);
    app.add_option("--cache", cache, "cache directory");
    auto * j = app.add_flag("--json", as_json, "JSON output (default)");
    app.add_flag("--text", as_text, "plain text output")->excludes(j);
    CLI11_PARSE(app, argc, argv);

    if (args.size() < 2) {
        std::cerr << "error: expected at least one command and an input file\n";
        return 1;
    }
    req.input = args.back();
    args.pop_back();
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (! strata::known_command(args[i])) {
            std::cerr << "error: unknown command '" << args[i] << "'\n";
            return 1;
        }
        req.commands.push_back(args[i]);
        if (args[i] == "resolve") {
            if (i + 1 >= args.size()) {
                std::cerr << "error: resolve needs a module spec\n";
                return 1;
            }
            req.module_specs.push_back(args[++i]);
        }
    }
    if (! cache.empty())
        req.cache_dir = cache;

    auto result = strata::run(req);
    for (const auto & note : result.notes)
        std::cerr << note << "\n";
    if (result.report.contains("error"))
        std::cerr << "error: " << result.report["error"]["message"].get<std::string>() << "\n";
    std::cout << (as_text ? strata::render_text(result.report) : strata::dump_report(result.report));
    return result.exit_code;
}
