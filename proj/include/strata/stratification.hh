#pragma once

#include <strata/homology.hh>

#include <cstddef>
#include <string>
#include <vector>

namespace strata
{
    enum class StratKind
    {
        Standard,
        ProperStandard,
        Costandard,
        ProperCostandard
    };

    [[nodiscard]] auto strat_kind_name(StratKind k) -> std::string;

    /// Delta(lambda), Delta-bar(lambda), and their duals over the opposite algebra.
    template <Field F>
    [[nodiscard]] auto strat_module(const std::shared_ptr<const Algebra<F>> & a, StratKind kind, std::size_t lambda) -> Module<F>;
    template <Field F>
    [[nodiscard]] auto strat_family(const std::shared_ptr<const Algebra<F>> & a, StratKind kind) -> std::vector<Module<F>>;

    /// Three-valued answer for searches whose negatives need a certificate.
    enum class Answer
    {
        No,
        Yes,
        Inconclusive
    };

    [[nodiscard]] auto answer_name(Answer a) -> std::string;

    /// One step of the layer-recursive SSS test: the trace of P(top) in P(lambda)
    /// must have dimension multiplicity * dim P(top).
    struct LayerCertificate
    {
        std::string top, lambda;
        std::size_t trace_dim, multiplicity, projective_dim;
        std::size_t depth;
        bool holds;
    };

    struct SssVerdict
    {
        bool sss = true;
        std::vector<LayerCertificate> layers;
        // first failing layer, if any
        std::optional<LayerCertificate> failure;
    };

    template <Field F>
    [[nodiscard]] auto is_sss(const std::shared_ptr<const Algebra<F>> & a) -> SssVerdict;

    struct FiltrationOptions
    {
        std::uint64_t seed = 1;
        // random epimorphisms tried per family member when kernels are not unique
        std::size_t tries = 3;
        std::size_t node_budget = 2000;
    };

    struct FiltrationResult
    {
        Answer answer = Answer::Inconclusive;
        // family indices of the subquotients, bottom first
        std::vector<std::size_t> chain;
        std::string reason;
    };

    /// Top-peeling search for a filtration with subquotients in the family.
    /// Family members must have simple top.
    template <Field F>
    [[nodiscard]] auto has_filtration(const Module<F> & m, const std::vector<Module<F>> & family, const FiltrationOptions & options = {}) -> FiltrationResult;

    /// Filtration by the duals of a family of modules with simple top, decided over the opposite algebra.
    template <Field F>
    [[nodiscard]] auto has_cofiltration(const Module<F> & m, const std::vector<Module<F>> & dual_family, const FiltrationOptions & options = {}) -> FiltrationResult;

    struct StratVerdict
    {
        SssVerdict sss;
        Answer properly_stratified = Answer::No;
        Answer quasi_hereditary = Answer::No;
        // Delta-bar filtration of each P(lambda)
        std::vector<FiltrationResult> proper_chains;
        std::vector<std::size_t> delta_dims, proper_delta_dims;
    };

    template <Field F>
    [[nodiscard]] auto stratify(const std::shared_ptr<const Algebra<F>> & a, const FiltrationOptions & options = {}) -> StratVerdict;
    template <Field F>
    [[nodiscard]] auto is_properly_stratified(const std::shared_ptr<const Algebra<F>> & a) -> Answer;
    template <Field F>
    [[nodiscard]] auto is_quasi_hereditary(const std::shared_ptr<const Algebra<F>> & a) -> Answer;

    /// Every I(lambda) has a filtration by proper costandard modules.
    template <Field F>
    [[nodiscard]] auto sss_alternative_check(const std::shared_ptr<const Algebra<F>> & a) -> Answer;

    /// max l with Ext^l(N, sum of proper costandards) nonzero. Throws Undetermined.
    template <Field F>
    [[nodiscard]] auto delta_dim(const Module<F> & n, std::size_t cap = default_cap) -> DimensionValue;
    /// max l with Ext^l(sum of standards, N) nonzero. Throws Undetermined.
    template <Field F>
    [[nodiscard]] auto nablabar_codim(const Module<F> & n, std::size_t cap = default_cap) -> DimensionValue;

    /// Counts of each family member in a certified chain.
    [[nodiscard]] auto delta_multiplicities(const FiltrationResult & r, std::size_t vertex_count) -> std::vector<std::size_t>;

    [[nodiscard]] auto to_json(const SssVerdict & v) -> nlohmann::json;
    [[nodiscard]] auto to_json(const FiltrationResult & r) -> nlohmann::json;
}
