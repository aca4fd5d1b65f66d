#include <strata/errors.hh>
#include <strata/stratification.hh>

#include <algorithm>
#include <map>

using std::size_t;
using std::string;
using std::vector;

namespace strata
{
    auto strat_kind_name(StratKind k) -> string
    {
        switch (k) {
        case StratKind::Standard: return "Delta";
        case StratKind::ProperStandard: return "DeltaBar";
        case StratKind::Costandard: return "Nabla";
        case StratKind::ProperCostandard: return "NablaBar";
        }
        return {};
    }

    auto answer_name(Answer a) -> string
    {
        switch (a) {
        case Answer::No: return "false";
        case Answer::Yes: return "true";
        case Answer::Inconclusive: return "inconclusive";
        }
        return {};
    }

    namespace
    {
        template <Field F>
        auto unit_vectors_at(const Module<F> & m, const vector<size_t> & vertices) -> vector<Vector<F>>
        {
            vector<Vector<F>> out;
            for (size_t i = 0; i < m.dim(); ++i)
                if (std::find(vertices.begin(), vertices.end(), m.vertex(i)) != vertices.end()) {
                    Vector<F> v(m.dim(), m.field().zero());
                    v[i] = m.field().one();
                    out.push_back(std::move(v));
                }
            return out;
        }

        template <Field F>
        auto standard(const std::shared_ptr<const Algebra<F>> & a, size_t lambda) -> Module<F>
        {
            auto p = projective(a, lambda);
            vector<size_t> higher;
            for (size_t v = 0; v < a->vertex_count(); ++v)
                if (a->rank(v) > a->rank(lambda))
                    higher.push_back(v);
            return quotient_module(p, submodule_space(p, unit_vectors_at(p, higher))).module;
        }

        template <Field F>
        auto proper_standard(const std::shared_ptr<const Algebra<F>> & a, size_t lambda) -> Module<F>
        {
            auto d = standard(a, lambda);
            auto rad = radical_space(d);
            vector<Vector<F>> at_lambda;
            for (size_t k = 0; k < rad.dim(); ++k)
                if (d.vertex(rad.pivots()[k]) == lambda)
                    at_lambda.push_back(rad.basis()[k]);
            return quotient_module(d, submodule_space(d, at_lambda)).module;
        }
    }

    template <Field F>
    auto strat_module(const std::shared_ptr<const Algebra<F>> & a, StratKind kind, size_t lambda) -> Module<F>
    {
        auto label = strat_kind_name(kind) + "(" + a->vertex_name(lambda) + ")";
        switch (kind) {
        case StratKind::Standard: return standard(a, lambda).with_label(label);
        case StratKind::ProperStandard: return proper_standard(a, lambda).with_label(label);
        case StratKind::Costandard: return dualize(standard(a->opposite(), lambda)).with_label(label);
        case StratKind::ProperCostandard: return dualize(proper_standard(a->opposite(), lambda)).with_label(label);
        }
        throw std::logic_error("unknown kind");
    }

    template <Field F>
    auto strat_family(const std::shared_ptr<const Algebra<F>> & a, StratKind kind) -> vector<Module<F>>
    {
        vector<Module<F>> out;
        for (size_t v = 0; v < a->vertex_count(); ++v)
            out.push_back(strat_module(a, kind, v));
        return out;
    }

    template <Field F>
    auto is_sss(const std::shared_ptr<const Algebra<F>> & a) -> SssVerdict
    {
        SssVerdict verdict;
        auto current = a;
        for (size_t depth = 0; current->vertex_count() > 1; ++depth) {
            auto top = current->order().back();
            auto pm = projective(current, top);
            for (size_t v = 0; v < current->vertex_count(); ++v) {
                if (v == top)
                    continue;
                auto p = projective(current, v);
                auto u = trace_of_projectives(p, {top}).module;
                auto k = top_vector(u)[top];
                LayerCertificate c{current->vertex_name(top), current->vertex_name(v), u.dim(), k, pm.dim(), depth, u.dim() == k * pm.dim()};
                verdict.layers.push_back(c);
                if (! c.holds && verdict.sss) {
                    verdict.sss = false;
                    verdict.failure = c;
                }
            }
            if (! verdict.sss)
                return verdict;
            current = quotient_by_idempotent_ideal<F>(current, top).quotient;
        }
        return verdict;
    }

    namespace
    {
        template <Field F>
        class FiltrationSearch
        {
        public:
            FiltrationSearch(const vector<Module<F>> & family, const FiltrationOptions & options) :
                _family(family),
                _options(options),
                _rng(options.seed)
            {
                for (const auto & s : family) {
                    _dims.push_back(s.dim_vector());
                    _local.push_back(sum(top_vector(s)) == 1);
                }
                const auto & a = family.empty() ? nullptr : family[0].algebra();
                for (size_t i = 0; i < family.size(); ++i)
                    _order.push_back(i);
                if (a && family.size() == a->vertex_count())
                    std::stable_sort(_order.begin(), _order.end(), [&](size_t x, size_t y) { return a->rank(x) > a->rank(y); });
                else
                    std::reverse(_order.begin(), _order.end());
            }

            auto run(const Module<F> & m) -> FiltrationResult
            {
                vector<size_t> chain;
                auto answer = search(m, chain);
                FiltrationResult r;
                r.answer = answer;
                if (answer == Answer::Yes) {
                    std::reverse(chain.begin(), chain.end());
                    r.chain = std::move(chain);
                    r.reason = "chain found";
                }
                else if (answer == Answer::No)
                    r.reason = _reason.empty() ? "all branches exhausted" : _reason;
                else
                    r.reason = _budget_hit ? "search budget exhausted" : "an epimorphism with a non-unique kernel led to a dead end";
                return r;
            }

        private:
            static auto sum(const vector<size_t> & v) -> size_t
            {
                size_t s = 0;
                for (auto x : v)
                    s += x;
                return s;
            }

            auto feasible(const vector<size_t> & dv) -> bool
            {
                if (sum(dv) == 0)
                    return true;
                if (auto it = _feasible.find(dv); it != _feasible.end())
                    return it->second;
                bool ok = false;
                for (size_t s = 0; s < _dims.size() && ! ok; ++s) {
                    if (sum(_dims[s]) == 0)
                        continue;
                    bool fits = true;
                    for (size_t i = 0; i < dv.size(); ++i)
                        fits = fits && _dims[s][i] <= dv[i];
                    if (! fits)
                        continue;
                    auto rest = dv;
                    for (size_t i = 0; i < dv.size(); ++i)
                        rest[i] -= _dims[s][i];
                    ok = feasible(rest);
                }
                _feasible[dv] = ok;
                return ok;
            }

            auto known_failure(const Module<F> & m) -> bool
            {
                auto key = module_key(m);
                for (size_t i = 0; i < _failures.size(); ++i)
                    if (_failure_keys[i] == key && is_isomorphic(_failures[i], m, _options.seed))
                        return true;
                return false;
            }

            auto search(const Module<F> & m, vector<size_t> & chain) -> Answer
            {
                if (m.dim() == 0)
                    return Answer::Yes;
                if (++_nodes > _options.node_budget) {
                    _budget_hit = true;
                    return Answer::Inconclusive;
                }
                if (! feasible(m.dim_vector())) {
                    if (_reason.empty())
                        _reason = "dimension vector is not a sum of family dimension vectors";
                    return Answer::No;
                }
                if (known_failure(m))
                    return Answer::No;

                bool uncertain = false;
                const auto & f = m.field();
                for (auto s : _order) {
                    const auto & target = _family[s];
                    if (target.dim() == 0 || target.dim() > m.dim())
                        continue;
                    auto homs = hom_space(m, target);
                    if (homs.empty())
                        continue;
                    bool have_epi = false;
                    for (const auto & h : homs)
                        if (rank(h) == target.dim()) {
                            have_epi = true;
                            break;
                        }
                    if (! have_epi && ! _local[s]) {
                        for (size_t t = 0; t < _options.tries && ! have_epi; ++t)
                            have_epi = rank(random_combination(homs, target.dim(), m.dim(), f, _rng)) == target.dim();
                        if (! have_epi)
                            uncertain = true;
                    }
                    if (! have_epi)
                        continue;

                    Matrix<F> stacked(f, 0, m.dim());
                    for (const auto & h : homs)
                        stacked = Matrix<F>::vstack(stacked, h);
                    auto common = kernel_basis(stacked);
                    if (common.size() + target.dim() == m.dim()) {
                        auto k = submodule_generated(m, common).module;
                        auto depth = chain.size();
                        chain.push_back(s);
                        auto r = search(k, chain);
                        if (r == Answer::Yes)
                            return r;
                        chain.resize(depth);
                        if (r == Answer::Inconclusive)
                            uncertain = true;
                        continue;
                    }
                    // kernels depend on the epimorphism; try a few generic ones
                    uncertain = true;
                    for (size_t t = 0; t < _options.tries; ++t) {
                        auto phi = random_combination(homs, target.dim(), m.dim(), f, _rng);
                        if (rank(phi) != target.dim())
                            continue;
                        auto k = submodule_generated(m, kernel_basis(phi)).module;
                        auto depth = chain.size();
                        chain.push_back(s);
                        if (search(k, chain) == Answer::Yes)
                            return Answer::Yes;
                        chain.resize(depth);
                    }
                }
                if (uncertain)
                    return Answer::Inconclusive;
                _failures.push_back(m);
                _failure_keys.push_back(module_key(m));
                return Answer::No;
            }

            const vector<Module<F>> & _family;
            FiltrationOptions _options;
            Rng _rng;
            vector<vector<size_t>> _dims;
            vector<bool> _local;
            vector<size_t> _order;
            std::map<vector<size_t>, bool> _feasible;
            vector<Module<F>> _failures;
            vector<ModuleKey> _failure_keys;
            size_t _nodes = 0;
            bool _budget_hit = false;
            string _reason;
        };
    }

    template <Field F>
    auto has_filtration(const Module<F> & m, const vector<Module<F>> & family, const FiltrationOptions & options) -> FiltrationResult
    {
        for (const auto & s : family)
            if (! same_algebra(m, s))
                throw std::invalid_argument("filtration family over a different algebra");
        FiltrationSearch<F> search(family, options);
        return search.run(m);
    }

    template <Field F>
    auto has_cofiltration(const Module<F> & m, const vector<Module<F>> & dual_family, const FiltrationOptions & options) -> FiltrationResult
    {
        auto r = has_filtration(dualize(m), dual_family, options);
        std::reverse(r.chain.begin(), r.chain.end());
        return r;
    }

    namespace
    {
        auto combine(Answer x, Answer y) -> Answer
        {
            if (x == Answer::No || y == Answer::No)
                return Answer::No;
            if (x == Answer::Inconclusive || y == Answer::Inconclusive)
                return Answer::Inconclusive;
            return Answer::Yes;
        }
    }

    template <Field F>
    auto stratify(const std::shared_ptr<const Algebra<F>> & a, const FiltrationOptions & options) -> StratVerdict
    {
        StratVerdict v;
        v.sss = is_sss(a);
        auto deltas = strat_family(a, StratKind::Standard);
        auto bars = strat_family(a, StratKind::ProperStandard);
        for (size_t l = 0; l < a->vertex_count(); ++l) {
            v.delta_dims.push_back(deltas[l].dim());
            v.proper_delta_dims.push_back(bars[l].dim());
        }
        if (! v.sss.sss) {
            v.properly_stratified = Answer::No;
            v.quasi_hereditary = Answer::No;
            return v;
        }
        auto ps = Answer::Yes;
        for (size_t l = 0; l < a->vertex_count(); ++l) {
            v.proper_chains.push_back(has_filtration(projective(a, l), bars, options));
            ps = combine(ps, v.proper_chains.back().answer);
        }
        v.properly_stratified = ps;
        if (ps != Answer::Yes)
            v.quasi_hereditary = ps;
        else
            v.quasi_hereditary = v.delta_dims == v.proper_delta_dims ? Answer::Yes : Answer::No;
        return v;
    }

    template <Field F>
    auto is_properly_stratified(const std::shared_ptr<const Algebra<F>> & a) -> Answer
    {
        return stratify(a).properly_stratified;
    }

    template <Field F>
    auto is_quasi_hereditary(const std::shared_ptr<const Algebra<F>> & a) -> Answer
    {
        return stratify(a).quasi_hereditary;
    }

    template <Field F>
    auto sss_alternative_check(const std::shared_ptr<const Algebra<F>> & a) -> Answer
    {
        auto op = a->opposite();
        auto bars = strat_family(op, StratKind::ProperStandard);
        auto out = Answer::Yes;
        for (size_t l = 0; l < a->vertex_count(); ++l)
            out = combine(out, has_cofiltration(injective(a, l), bars).answer);
        return out;
    }

    template <Field F>
    auto delta_dim(const Module<F> & n, size_t cap) -> DimensionValue
    {
        auto r = minimal_resolution(n, cap);
        auto pd = r.projective_dimension();
        if (pd.is_infinite())
            return pd;
        if (! pd.is_exact())
            throw Undetermined("projective dimension not determined within cap " + std::to_string(cap));
        auto nb = direct_sum(strat_family(n.algebra(), StratKind::ProperCostandard));
        for (size_t l = pd.value + 1; l-- > 0;)
            if (ext_from_resolution(r, nb, l) != 0)
                return DimensionValue::exact(l);
        return DimensionValue::exact(0);
    }

    template <Field F>
    auto nablabar_codim(const Module<F> & n, size_t cap) -> DimensionValue
    {
        auto delta = direct_sum(strat_family(n.algebra(), StratKind::Standard));
        auto r = minimal_resolution(delta, cap);
        auto pd = r.projective_dimension();
        if (! pd.is_exact())
            throw Undetermined("projective dimension of the standard modules is not finite within cap " + std::to_string(cap));
        for (size_t l = pd.value + 1; l-- > 0;)
            if (ext_from_resolution(r, n, l) != 0)
                return DimensionValue::exact(l);
        return DimensionValue::exact(0);
    }

    auto delta_multiplicities(const FiltrationResult & r, size_t vertex_count) -> vector<size_t>
    {
        if (r.answer != Answer::Yes)
            throw PreconditionFailed("multiplicities need a certified chain");
        vector<size_t> out(vertex_count, 0);
        for (auto s : r.chain)
            ++out.at(s);
        return out;
    }

    auto to_json(const SssVerdict & v) -> nlohmann::json
    {
        using nlohmann::json;
        json layers = json::array();
        for (const auto & c : v.layers)
            layers.push_back({{"top", c.top}, {"vertex", c.lambda}, {"trace_dim", c.trace_dim}, {"multiplicity", c.multiplicity}, {"projective_dim", c.projective_dim}, {"depth", c.depth}, {"holds", c.holds}});
        json j{{"sss", v.sss}, {"layers", layers}};
        if (v.failure)
            j["failure"] = {{"top", v.failure->top}, {"vertex", v.failure->lambda}, {"trace_dim", v.failure->trace_dim}, {"multiplicity", v.failure->multiplicity}, {"projective_dim", v.failure->projective_dim}, {"depth", v.failure->depth}};
        return j;
    }

    auto to_json(const FiltrationResult & r) -> nlohmann::json
    {
        return {{"answer", answer_name(r.answer)}, {"chain", r.chain}, {"reason", r.reason}};
    }

#define STRATA_INSTANTIATE_STRATIFICATION(F)                                                                           \
    template auto strat_module(const std::shared_ptr<const Algebra<F>> &, StratKind, size_t) -> Module<F>;             \
    template auto strat_family(const std::shared_ptr<const Algebra<F>> &, StratKind) -> vector<Module<F>>;             \
    template auto is_sss(const std::shared_ptr<const Algebra<F>> &) -> SssVerdict;                                     \
    template auto has_filtration(const Module<F> &, const vector<Module<F>> &, const FiltrationOptions &) -> FiltrationResult;   \
    template auto has_cofiltration(const Module<F> &, const vector<Module<F>> &, const FiltrationOptions &) -> FiltrationResult; \
    template auto stratify(const std::shared_ptr<const Algebra<F>> &, const FiltrationOptions &) -> StratVerdict;       \
    template auto is_properly_stratified(const std::shared_ptr<const Algebra<F>> &) -> Answer;                         \
    template auto is_quasi_hereditary(const std::shared_ptr<const Algebra<F>> &) -> Answer;                            \
    template auto sss_alternative_check(const std::shared_ptr<const Algebra<F>> &) -> Answer;                          \
    template auto delta_dim(const Module<F> &, size_t) -> DimensionValue;                                              \
    template auto nablabar_codim(const Module<F> &, size_t) -> DimensionValue;

    STRATA_INSTANTIATE_STRATIFICATION(PrimeField)
    STRATA_INSTANTIATE_STRATIFICATION(RationalField)
}
