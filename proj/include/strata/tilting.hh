#pragma once

#include <strata/quiver.hh>
#include <strata/stratification.hh>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace strata
{
    template <Field F>
    struct Extension
    {
        Module<F> module;
        // E.dim x X.dim
        Matrix<F> inclusion;
        std::size_t copies;
    };

    /// 0 -> X -> E -> S^d -> 0 realising a basis of Ext^1(S, X), d its dimension.
    template <Field F>
    [[nodiscard]] auto universal_extension(const Module<F> & x, const Module<F> & s) -> Extension<F>;

    template <Field F>
    struct TiltingData
    {
        std::vector<Module<F>> summands;
        Module<F> total;
        DimensionValue pd;
        // universal extension steps per summand
        std::vector<std::size_t> steps;
    };

    /// T(lambda) for every vertex, built from Delta(lambda) by universal extensions.
    /// Throws NonConvergent.
    template <Field F>
    [[nodiscard]] auto characteristic_tilting(const std::shared_ptr<const Algebra<F>> & a, std::size_t cap = default_cap) -> TiltingData<F>;
    /// C(lambda), the duals of the characteristic tilting summands of the opposite algebra.
    template <Field F>
    [[nodiscard]] auto characteristic_cotilting(const std::shared_ptr<const Algebra<F>> & a, std::size_t cap = default_cap) -> TiltingData<F>;

    template <Field F>
    struct TiltingCheck
    {
        Answer answer = Answer::Inconclusive;
        DimensionValue pd;
        // dimensions of the terms of the add(M)-coresolution of A
        std::vector<std::size_t> coresolution;
        std::string reason;
    };

    template <Field F>
    [[nodiscard]] auto is_generalized_tilting(const Module<F> & m, std::size_t cap = default_cap) -> TiltingCheck<F>;

    template <Field F>
    struct RingelData
    {
        TiltingData<F> tilting;
        std::shared_ptr<const Algebra<F>> ringel;
        // basis of End(T) as T.dim x T.dim matrices, in the order of the Ringel dual basis
        std::vector<Matrix<F>> basis;
        std::vector<std::size_t> offsets;
        bool ringel_sss;
    };

    /// R = End(T) with r * s = s . r, vertex order reversed.
    template <Field F>
    [[nodiscard]] auto ringel_dual(const std::shared_ptr<const Algebra<F>> & a, const TiltingData<F> & t) -> RingelData<F>;

    /// F(M) = Hom(T, M) as a left R-module.
    template <Field F>
    [[nodiscard]] auto ringel_functor(const RingelData<F> & rd, const Module<F> & m) -> Module<F>;

    /// When T is the regular module, checks that b -> (x -> x b) is an algebra isomorphism A -> R.
    /// nullopt when T is not isomorphic to A.
    template <Field F>
    [[nodiscard]] auto ringel_isomorphic_to_algebra(const RingelData<F> & rd) -> std::optional<bool>;

    template <Field F>
    struct RingelStratification
    {
        Answer answer = Answer::Inconclusive;
        // properly stratified test run on R itself
        Answer direct = Answer::Inconclusive;
        // filtrations of each T(lambda) by the N(mu)
        Answer via_n = Answer::Inconclusive;
        std::vector<FiltrationResult> n_chains;
        std::vector<std::size_t> n_dims;
    };

    template <Field F>
    [[nodiscard]] auto ringel_dual_properly_stratified(const RingelData<F> & rd) -> RingelStratification<F>;

    template <Field F>
    struct TwoStep
    {
        std::vector<Module<F>> summands;
        Module<F> total;
        TiltingData<F> ringel_tilting;
        DimensionValue pd;
        bool functor_check;
        Answer nablabar_filtered;
        TiltingCheck<F> tilting_check;
    };

    /// H with F(H) = T^(R), built as T tensored over R with T^(R). Throws PreconditionFailed
    /// when R is not properly stratified, VerificationFailed when F(H) differs from T^(R).
    template <Field F>
    [[nodiscard]] auto two_step_tilting(const RingelData<F> & rd, std::size_t cap = default_cap) -> TwoStep<F>;

    template <Field F>
    struct Duality
    {
        std::shared_ptr<const Algebra<F>> algebra;
        // sigma as a matrix on the algebra basis
        Matrix<F> sigma;
        bool simples_fixed;

        /// M^star, the dual of M twisted by sigma.
        [[nodiscard]] auto star(const Module<F> & m) const -> Module<F>;
    };

    /// Extends an arrow involution to an anti-involution fixing the vertices.
    /// Throws NotAntiInvolution.
    template <Field F>
    [[nodiscard]] auto verify_duality(const std::shared_ptr<const Algebra<F>> & a, const std::vector<std::pair<std::size_t, std::size_t>> & arrows) -> Duality<F>;

    struct FdimDelta
    {
        bool exact = false;
        std::size_t value = 0;
        std::size_t lower = 0;
        std::optional<std::size_t> upper;
        std::string route;
        // injection search certificate
        std::size_t search_cap = 0, pairs_checked = 0, tries = 0;
        // injections found whose cokernel is still Delta-filtered, such as split ones
        std::size_t injections_seen = 0;
        std::string error_bound;
        std::optional<std::size_t> delta_dim_h;
    };

    template <Field F>
    [[nodiscard]] auto fdim_delta_estimate(const std::shared_ptr<const Algebra<F>> & a, const TiltingData<F> & t, const std::optional<RingelData<F>> & rd, const std::optional<TwoStep<F>> & h, std::uint64_t seed = 1) -> FdimDelta;

    struct BoundCheck
    {
        std::string id;
        std::string statement;
        std::string verdict;  // pass, fail, inapplicable, undetermined
        std::string detail;
    };

    struct Bound
    {
        std::size_t value;
        std::string source;
    };

    struct FdimReport
    {
        DimensionValue pd_t, id_c;
        FdimDelta fdim_delta;
        bool fdim_exact = false;
        std::size_t lower = 0;
        std::optional<std::size_t> upper;
        std::vector<Bound> lower_bounds, upper_bounds;
        std::string chain, full_chain;
        bool chain_holds = true;
        std::vector<BoundCheck> checks;
        BoundCheck conjecture;
        std::optional<std::string> ifdim_note;
    };

    struct IfdimCheck
    {
        bool applicable = false;
        std::vector<bool> injections;
        std::vector<std::pair<std::string, DimensionValue>> samples;
        std::size_t lower_bound = 0;
        bool holds = true;
        DimensionValue pd_h;
    };

    /// Everything the finitistic dimension report needs, computed once.
    template <Field F>
    struct Analysis
    {
        std::shared_ptr<const Algebra<F>> algebra;
        std::size_t cap;
        std::uint64_t seed;
        StratVerdict strat;
        std::optional<TiltingData<F>> tilting, cotilting;
        std::optional<Duality<F>> duality;
        std::string duality_error;
        std::optional<bool> t_self_dual;
        std::vector<bool> summands_self_dual;
        std::optional<RingelData<F>> ringel;
        std::optional<RingelStratification<F>> ringel_strat;
        std::optional<TwoStep<F>> two_step;
        std::string two_step_note;
        DimensionValue gldim;
        std::optional<TiltingCheck<F>> injectives_tilting;
        std::optional<FdimReport> fdim;
        std::optional<IfdimCheck> ifdim;
    };

    template <Field F>
    [[nodiscard]] auto analyse(const std::shared_ptr<const Algebra<F>> & a, const QuiverPresentation * q, std::size_t cap = default_cap, std::uint64_t seed = 1) -> Analysis<F>;

    template <Field F>
    [[nodiscard]] auto fdim_report(Analysis<F> & an) -> FdimReport;
    template <Field F>
    [[nodiscard]] auto ifdim_check(const Analysis<F> & an) -> IfdimCheck;

    [[nodiscard]] auto to_json(const FdimDelta & d) -> nlohmann::json;
    [[nodiscard]] auto to_json(const FdimReport & r) -> nlohmann::json;
    [[nodiscard]] auto to_json(const IfdimCheck & c) -> nlohmann::json;
}
