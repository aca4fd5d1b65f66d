#pragma once

#include <strata/algebra.hh>

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace strata
{
    /// A finite-dimensional left module. The basis is adapted to the vertex
    /// idempotents: basis vector i lies in e_{vertex(i)} M.
    template <Field F>
    class Module
    {
    public:
        using AlgebraPtr = typename Algebra<F>::Ptr;

        Module(AlgebraPtr a, std::vector<std::size_t> vertex, std::vector<Matrix<F>> action, std::string label = {});

        [[nodiscard]] auto algebra() const -> const AlgebraPtr & { return _d->algebra; }
        [[nodiscard]] auto field() const -> const F & { return _d->algebra->field(); }
        [[nodiscard]] auto dim() const -> std::size_t { return _d->vertex.size(); }
        [[nodiscard]] auto vertex(std::size_t i) const -> std::size_t { return _d->vertex[i]; }
        [[nodiscard]] auto vertices() const -> const std::vector<std::size_t> & { return _d->vertex; }
        [[nodiscard]] auto action(std::size_t b) const -> const Matrix<F> & { return _d->action[b]; }
        [[nodiscard]] auto actions() const -> const std::vector<Matrix<F>> & { return _d->action; }
        [[nodiscard]] auto generator_action(std::size_t k) const -> const Matrix<F> & { return _d->gen_action[k]; }
        [[nodiscard]] auto label() const -> const std::string & { return _d->label; }
        [[nodiscard]] auto with_label(std::string label) const -> Module;

        /// Action of an arbitrary algebra element.
        [[nodiscard]] auto action_of(const Vector<F> & a) const -> Matrix<F>;

        /// Multiplicity of each vertex, indexed by vertex.
        [[nodiscard]] auto dim_vector() const -> std::vector<std::size_t>;
        [[nodiscard]] auto indices_at(std::size_t v) const -> std::vector<std::size_t>;
        [[nodiscard]] auto is_zero() const -> bool { return dim() == 0; }

    private:
        struct Data
        {
            AlgebraPtr algebra;
            std::vector<std::size_t> vertex;
            std::vector<Matrix<F>> action, gen_action;
            std::string label;
        };
        std::shared_ptr<const Data> _d;
    };

    template <Field F>
    [[nodiscard]] auto same_algebra(const Module<F> & m, const Module<F> & n) -> bool;

    template <Field F>
    struct Submodule
    {
        Module<F> module;
        // ambient dim x sub dim, columns are the basis of the submodule
        Matrix<F> inclusion;
    };

    template <Field F>
    struct QuotientModule
    {
        Module<F> module;
        Matrix<F> projection;
    };

    template <Field F>
    struct MapSpaces
    {
        Submodule<F> kernel, image;
        QuotientModule<F> cokernel;
    };

    template <Field F>
    struct Cover
    {
        Module<F> source;
        // target dim x source dim
        Matrix<F> map;
        // vertex of each indecomposable projective summand, with its offset
        std::vector<std::size_t> tops, offsets;
    };

    template <Field F>
    struct Summand
    {
        Module<F> module;
        Matrix<F> inclusion;
    };

    template <Field F>
    struct DecompositionEntry
    {
        Module<F> module;
        std::size_t multiplicity;
    };

    /// Isomorphism invariants used for canonical ordering.
    struct ModuleKey
    {
        std::size_t dim;
        std::vector<std::size_t> dim_vector;
        std::vector<std::vector<std::size_t>> radical_layers, socle_layers;
        auto operator<=>(const ModuleKey &) const = default;
    };

    template <Field F>
    [[nodiscard]] auto zero_module(const std::shared_ptr<const Algebra<F>> & a) -> Module<F>;
    template <Field F>
    [[nodiscard]] auto regular_module(const std::shared_ptr<const Algebra<F>> & a) -> Module<F>;
    /// P(lambda) = A e_lambda, basis the algebra basis elements with source lambda.
    template <Field F>
    [[nodiscard]] auto projective(const std::shared_ptr<const Algebra<F>> & a, std::size_t lambda) -> Module<F>;
    template <Field F>
    [[nodiscard]] auto simple(const std::shared_ptr<const Algebra<F>> & a, std::size_t lambda) -> Module<F>;
    /// I(lambda), the dual of the projective of the opposite algebra.
    template <Field F>
    [[nodiscard]] auto injective(const std::shared_ptr<const Algebra<F>> & a, std::size_t lambda) -> Module<F>;

    /// Violated module axioms; empty when M is a module.
    template <Field F>
    [[nodiscard]] auto check_module(const Module<F> & m) -> std::vector<std::string>;
    template <Field F>
    [[nodiscard]] auto is_homomorphism(const Module<F> & m, const Module<F> & n, const Matrix<F> & f) -> bool;

    /// Basis of Hom_A(M, N) as N.dim x M.dim matrices.
    template <Field F>
    [[nodiscard]] auto hom_space(const Module<F> & m, const Module<F> & n) -> std::vector<Matrix<F>>;

    /// Smallest submodule containing the given vectors.
    template <Field F>
    [[nodiscard]] auto submodule_generated(const Module<F> & m, const std::vector<Vector<F>> & vectors) -> Submodule<F>;
    template <Field F>
    [[nodiscard]] auto submodule_space(const Module<F> & m, const std::vector<Vector<F>> & vectors) -> Subspace<F>;
    /// The submodule whose underlying space is u (u must be a submodule).
    template <Field F>
    [[nodiscard]] auto submodule_from_space(const Module<F> & m, const Subspace<F> & u) -> Submodule<F>;
    template <Field F>
    [[nodiscard]] auto quotient_module(const Module<F> & m, const Subspace<F> & u) -> QuotientModule<F>;

    template <Field F>
    [[nodiscard]] auto map_spaces(const Module<F> & m, const Module<F> & n, const Matrix<F> & f) -> MapSpaces<F>;

    template <Field F>
    [[nodiscard]] auto direct_sum(const std::vector<Module<F>> & parts) -> Module<F>;

    template <Field F>
    [[nodiscard]] auto radical_space(const Module<F> & m) -> Subspace<F>;
    template <Field F>
    [[nodiscard]] auto socle_space(const Module<F> & m) -> Subspace<F>;
    template <Field F>
    [[nodiscard]] auto radical_submodule(const Module<F> & m) -> Submodule<F>;
    template <Field F>
    [[nodiscard]] auto socle_submodule(const Module<F> & m) -> Submodule<F>;
    template <Field F>
    [[nodiscard]] auto top_vector(const Module<F> & m) -> std::vector<std::size_t>;
    template <Field F>
    [[nodiscard]] auto socle_vector(const Module<F> & m) -> std::vector<std::size_t>;
    /// Vertex multiplicities of rad^k M / rad^{k+1} M, top first.
    template <Field F>
    [[nodiscard]] auto radical_layers(const Module<F> & m) -> std::vector<std::vector<std::size_t>>;
    /// Vertex multiplicities of soc^{k+1} M / soc^k M, socle first.
    template <Field F>
    [[nodiscard]] auto socle_layers(const Module<F> & m) -> std::vector<std::vector<std::size_t>>;
    /// Per-vertex dimensions of a subspace with a homogeneous basis.
    template <Field F>
    [[nodiscard]] auto space_dim_vector(const Module<F> & m, const Subspace<F> & u) -> std::vector<std::size_t>;

    /// Sum of the images of all maps X -> M.
    template <Field F>
    [[nodiscard]] auto trace(const Module<F> & x, const Module<F> & m) -> Submodule<F>;
    /// Trace of the projectives P(v), v in the given set: the submodule generated by the e_v M.
    template <Field F>
    [[nodiscard]] auto trace_of_projectives(const Module<F> & m, const std::vector<std::size_t> & vertices) -> Submodule<F>;

    template <Field F>
    [[nodiscard]] auto projective_cover(const Module<F> & m) -> Cover<F>;

    /// Vector-space dual, a module over the opposite algebra.
    template <Field F>
    [[nodiscard]] auto dualize(const Module<F> & m) -> Module<F>;

    /// Pulls a module over q.quotient back to q.parent.
    template <Field F>
    [[nodiscard]] auto inflate(const Module<F> & m, const IdempotentQuotient<F> & q) -> Module<F>;

    /// Basis of rad End(M) when End(M) is local (certified by nilpotency), else nullopt.
    template <Field F>
    [[nodiscard]] auto local_end_radical(const Module<F> & m) -> std::optional<std::vector<Matrix<F>>>;
    template <Field F>
    [[nodiscard]] auto is_indecomposable(const Module<F> & m) -> bool;

    /// Fitting decomposition into certified indecomposable summands. Throws NonSplit.
    template <Field F>
    [[nodiscard]] auto indecomposable_summands(const Module<F> & m, Rng & rng) -> std::vector<Summand<F>>;

    /// Isomorphism classes with multiplicities, sorted by module_key.
    template <Field F>
    [[nodiscard]] auto decompose(const Module<F> & m, std::uint64_t seed) -> std::vector<DecompositionEntry<F>>;

    /// Deterministic test for two modules with local endomorphism rings.
    template <Field F>
    [[nodiscard]] auto indecomposable_isomorphism(const Module<F> & x, const Module<F> & y) -> std::optional<Matrix<F>>;

    /// An isomorphism M -> N if one exists. Negative answers are certified by
    /// invariants or by matching indecomposable summands.
    template <Field F>
    [[nodiscard]] auto is_isomorphic(const Module<F> & m, const Module<F> & n, std::uint64_t seed = 1) -> std::optional<Matrix<F>>;

    template <Field F>
    [[nodiscard]] auto module_key(const Module<F> & m) -> ModuleKey;

    /// A random element of the span of the given maps.
    template <Field F>
    [[nodiscard]] auto random_combination(const std::vector<Matrix<F>> & basis, std::size_t rows, std::size_t cols, const F & f, Rng & rng) -> Matrix<F>;

    template <Field F>
    [[nodiscard]] auto module_to_json(const Module<F> & m) -> nlohmann::json;
}
