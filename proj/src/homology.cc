#include <strata/errors.hh>
#include <strata/homology.hh>

#include <algorithm>

using std::size_t;
using std::string;
using std::vector;

namespace strata
{
    auto DimensionValue::to_string() const -> string
    {
        switch (kind) {
        case Kind::Exact: return std::to_string(value);
        case Kind::AtLeast: return ">=" + std::to_string(value);
        case Kind::Infinite: return "infinite";
        }
        return {};
    }

    auto DimensionValue::to_json() const -> nlohmann::json
    {
        switch (kind) {
        case Kind::Exact: return {{"status", "exact"}, {"value", value}};
        case Kind::AtLeast: return {{"status", "at_least"}, {"value", value}};
        case Kind::Infinite: return {{"status", "infinite"}};
        }
        return {};
    }

    auto max_dimension(const vector<DimensionValue> & values) -> DimensionValue
    {
        auto out = DimensionValue::exact(0);
        for (const auto & v : values) {
            if (v.is_infinite())
                return v;
            if (v.kind == DimensionValue::Kind::AtLeast)
                out.kind = DimensionValue::Kind::AtLeast;
            out.value = std::max(out.value, v.value);
        }
        return out;
    }

    template <Field F>
    auto Resolution<F>::term(size_t i) const -> vector<size_t>
    {
        vector<size_t> out(target.algebra()->vertex_count(), 0);
        if (i < covers.size())
            for (auto v : covers[i].tops)
                ++out[v];
        return out;
    }

    template <Field F>
    auto Resolution<F>::differential(size_t i) const -> Matrix<F>
    {
        if (i == 0 || i >= covers.size())
            throw std::out_of_range("differential index outside the computed resolution");
        return inclusions[i - 1] * covers[i].map;
    }

    template <Field F>
    auto Resolution<F>::length() const -> size_t
    {
        size_t len = 0;
        for (size_t i = 0; i < covers.size(); ++i)
            if (covers[i].source.dim() > 0)
                len = i;
        return len;
    }

    template <Field F>
    auto Resolution<F>::projective_dimension() const -> DimensionValue
    {
        switch (status) {
        case Status::Terminated: return DimensionValue::exact(length());
        case Status::Periodic: return DimensionValue::infinite();
        case Status::Truncated: return DimensionValue::at_least(cap);
        }
        return {};
    }

    template <Field F>
    auto minimal_resolution(const Module<F> & m, size_t cap, bool detect_periodic, std::uint64_t seed) -> Resolution<F>
    {
        Resolution<F> r{m, {m}, {}, {}};
        r.cap = cap;
        for (size_t i = 0;; ++i) {
            const auto & current = r.syzygies[i];
            auto cover = projective_cover(current);
            auto spaces = map_spaces(cover.source, current, cover.map);
            r.covers.push_back(std::move(cover));
            if (current.dim() == 0) {
                r.status = Resolution<F>::Status::Terminated;
                return r;
            }
            auto next = spaces.kernel.module;
            r.inclusions.push_back(spaces.kernel.inclusion);
            r.syzygies.push_back(next);
            if (next.dim() == 0) {
                r.covers.push_back(projective_cover(next));
                r.status = Resolution<F>::Status::Terminated;
                return r;
            }
            if (detect_periodic)
                for (size_t j = 0; j <= i; ++j)
                    if (is_isomorphic(r.syzygies[j], next, seed)) {
                        r.status = Resolution<F>::Status::Periodic;
                        r.offset = j;
                        r.period = i + 1 - j;
                        return r;
                    }
            if (i + 1 >= cap) {
                r.status = Resolution<F>::Status::Truncated;
                return r;
            }
        }
    }

    namespace
    {
        // positions of the algebra basis elements with source lambda, as laid out in P(lambda)
        template <Field F>
        auto projective_positions(const Algebra<F> & a, size_t lambda) -> vector<size_t>
        {
            vector<size_t> out;
            for (size_t i = 0; i < a.dim(); ++i)
                if (a.source(i) == lambda)
                    out.push_back(i);
            return out;
        }

        // Matrix of Hom(P_i, N) -> Hom(P_{i+1}, N), phi -> phi . d, in the coordinates
        // given by the images of the top generators.
        template <Field F>
        auto pullback_matrix(const Cover<F> & from, const Cover<F> & to, const Matrix<F> & d, const Module<F> & n) -> Matrix<F>
        {
            const auto & a = *n.algebra();
            const auto & f = n.field();
            vector<vector<size_t>> n_at;
            for (size_t v = 0; v < a.vertex_count(); ++v)
                n_at.push_back(n.indices_at(v));
            auto offsets_for = [&](const Cover<F> & c) {
                vector<size_t> off;
                size_t total = 0;
                for (auto v : c.tops) {
                    off.push_back(total);
                    total += n_at[v].size();
                }
                off.push_back(total);
                return off;
            };
            auto col_off = offsets_for(from);
            auto row_off = offsets_for(to);
            Matrix<F> out(f, row_off.back(), col_off.back());
            vector<vector<size_t>> basis_of(a.vertex_count());
            for (size_t v = 0; v < a.vertex_count(); ++v)
                basis_of[v] = projective_positions(a, v);

            for (size_t j = 0; j < to.tops.size(); ++j) {
                auto lj = to.tops[j];
                // the generator of the j-th summand sits at the idempotent of P(lj)
                auto idem = a.idempotent(lj);
                auto local = std::find(basis_of[lj].begin(), basis_of[lj].end(), idem) - basis_of[lj].begin();
                auto column = d.column(to.offsets[j] + local);
                for (size_t k = 0; k < from.tops.size(); ++k) {
                    auto lk = from.tops[k];
                    const auto & bk = basis_of[lk];
                    for (size_t p = 0; p < bk.size(); ++p) {
                        const auto & x = column[from.offsets[k] + p];
                        if (f.is_zero(x))
                            continue;
                        const auto & rho = n.action(bk[p]);
                        for (size_t r = 0; r < n_at[lj].size(); ++r)
                            for (size_t c = 0; c < n_at[lk].size(); ++c) {
                                const auto & e = rho(n_at[lj][r], n_at[lk][c]);
                                if (! f.is_zero(e))
                                    out(row_off[j] + r, col_off[k] + c) = f.add(out(row_off[j] + r, col_off[k] + c), f.mul(x, e));
                            }
                    }
                }
            }
            return out;
        }

        template <Field F>
        auto hom_from_projective_dim(const Cover<F> & c, const Module<F> & n) -> size_t
        {
            size_t total = 0;
            auto dv = n.dim_vector();
            for (auto v : c.tops)
                total += dv[v];
            return total;
        }
    }

    template <Field F>
    auto ext_from_resolution(const Resolution<F> & r, const Module<F> & n, size_t i) -> size_t
    {
        if (! same_algebra(r.target, n))
            throw std::invalid_argument("modules over different algebras");
        if (i >= r.covers.size()) {
            if (r.status == Resolution<F>::Status::Terminated)
                return 0;
            throw Undetermined("resolution does not reach degree " + std::to_string(i));
        }
        auto dim_hom = hom_from_projective_dim(r.covers[i], n);
        if (dim_hom == 0)
            return 0;
        size_t rank_out = 0, rank_in = 0;
        if (i + 1 < r.covers.size())
            rank_out = rank(pullback_matrix(r.covers[i], r.covers[i + 1], r.differential(i + 1), n));
        else if (r.status != Resolution<F>::Status::Terminated)
            throw Undetermined("resolution does not reach degree " + std::to_string(i + 1));
        if (i > 0)
            rank_in = rank(pullback_matrix(r.covers[i - 1], r.covers[i], r.differential(i), n));
        return dim_hom - rank_out - rank_in;
    }

    template <Field F>
    auto ext(const Module<F> & m, const Module<F> & n, size_t i) -> size_t
    {
        if (i == 0)
            return hom_space(m, n).size();
        auto r = minimal_resolution(m, i + 2, false);
        return ext_from_resolution(r, n, i);
    }

    template <Field F>
    auto ext_via_coresolution(const Module<F> & m, const Module<F> & n, size_t i) -> size_t
    {
        return ext(dualize(n), dualize(m), i);
    }

    template <Field F>
    auto projective_dimension(const Module<F> & m, size_t cap) -> DimensionValue
    {
        return minimal_resolution(m, cap).projective_dimension();
    }

    template <Field F>
    auto injective_dimension(const Module<F> & m, size_t cap) -> DimensionValue
    {
        return projective_dimension(dualize(m), cap);
    }

    template <Field F>
    auto global_dimension(const std::shared_ptr<const Algebra<F>> & a, size_t cap) -> DimensionValue
    {
        vector<DimensionValue> values;
        for (size_t v = 0; v < a->vertex_count(); ++v)
            values.push_back(projective_dimension(simple(a, v), cap));
        return max_dimension(values);
    }

    template <Field F>
    auto resolution_to_json(const Resolution<F> & r) -> nlohmann::json
    {
        using nlohmann::json;
        const auto & a = *r.target.algebra();
        json terms = json::array();
        for (size_t i = 0; i < r.covers.size(); ++i) {
            if (r.covers[i].source.dim() == 0)
                continue;
            json t = json::object();
            auto mult = r.term(i);
            for (size_t v = 0; v < mult.size(); ++v)
                if (mult[v] > 0)
                    t["P(" + a.vertex_name(v) + ")"] = mult[v];
            terms.push_back(t);
        }
        json j{{"terms", terms}, {"cap", r.cap}, {"projective_dimension", r.projective_dimension().to_json()}};
        switch (r.status) {
        case Resolution<F>::Status::Terminated: j["status"] = "terminated"; break;
        case Resolution<F>::Status::Truncated: j["status"] = "truncated"; break;
        case Resolution<F>::Status::Periodic:
            j["status"] = "periodic";
            j["period"] = r.period;
            j["offset"] = r.offset;
            break;
        }
        return j;
    }

#define STRATA_INSTANTIATE_HOMOLOGY(F)                                                                                 \
    template struct Resolution<F>;                                                                                     \
    template auto minimal_resolution(const Module<F> &, size_t, bool, std::uint64_t) -> Resolution<F>;                \
    template auto ext(const Module<F> &, const Module<F> &, size_t) -> size_t;                                        \
    template auto ext_from_resolution(const Resolution<F> &, const Module<F> &, size_t) -> size_t;                    \
    template auto ext_via_coresolution(const Module<F> &, const Module<F> &, size_t) -> size_t;                       \
    template auto projective_dimension(const Module<F> &, size_t) -> DimensionValue;                                  \
    template auto injective_dimension(const Module<F> &, size_t) -> DimensionValue;                                   \
    template auto global_dimension(const std::shared_ptr<const Algebra<F>> &, size_t) -> DimensionValue;              \
    template auto resolution_to_json(const Resolution<F> &) -> nlohmann::json;

    STRATA_INSTANTIATE_HOMOLOGY(PrimeField)
    STRATA_INSTANTIATE_HOMOLOGY(RationalField)
}
