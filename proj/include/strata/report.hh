#pragma once

#include <strata/tilting.hh>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace strata
{
    inline constexpr const char * version = "0.3.0";
    inline constexpr const char * report_schema = "strata-report/1";

    struct AnalysisRequest
    {
        std::string input;
        // command names in request order; "resolve" consumes one entry of module_specs
        std::vector<std::string> commands;
        std::vector<std::string> module_specs;
        std::size_t cap = default_cap;
        std::uint64_t seed = 1;
        std::optional<std::string> cache_dir;
    };

    struct RunResult
    {
        nlohmann::json report;
        int exit_code = 0;
        // diagnostics for stderr, never part of the report
        std::vector<std::string> notes;
    };

    [[nodiscard]] auto known_command(const std::string & name) -> bool;

    [[nodiscard]] auto run(const AnalysisRequest & request) -> RunResult;

    /// Canonical serialisation: sorted keys, two space indent, trailing newline.
    [[nodiscard]] auto dump_report(const nlohmann::json & report) -> std::string;
    /// Plain text view derived from the JSON report.
    [[nodiscard]] auto render_text(const nlohmann::json & report) -> std::string;

    struct ExampleAssertion
    {
        std::string name;
        bool pass;
        std::string detail;
    };

    /// The eleven checks of the four loop counterexample, run on the algebra in the given file.
    [[nodiscard]] auto verify_counterexample(const std::string & path, std::size_t cap = default_cap, std::uint64_t seed = 1) -> std::vector<ExampleAssertion>;

    [[nodiscard]] auto sha256_hex(const std::string & data) -> std::string;

    /// Per-command report sections keyed by a content hash.
    class Cache
    {
    public:
        explicit Cache(std::string dir);

        [[nodiscard]] auto load(const std::string & key, std::vector<std::string> & notes) const -> std::optional<nlohmann::json>;
        auto store(const std::string & key, const nlohmann::json & section) const -> void;

    private:
        std::string _dir;
    };

    /// Module named by a spec such as L(1), P(2), I(1), Delta(1), DeltaBar(1), Nabla(1), NablaBar(1), T(1) or A.
    template <Field F>
    [[nodiscard]] auto module_from_spec(const std::shared_ptr<const Algebra<F>> & a, const std::string & spec, std::size_t cap = default_cap) -> Module<F>;
}
