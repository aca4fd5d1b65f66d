#include <strata/errors.hh>
#include <strata/tilting.hh>

#include <algorithm>
#include <cmath>
#include <sstream>

using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace strata
{
    namespace
    {
        template <Field F>
        auto flatten(const Matrix<F> & m) -> Vector<F>
        {
            Vector<F> v;
            v.reserve(m.rows() * m.cols());
            for (size_t i = 0; i < m.rows(); ++i)
                for (size_t j = 0; j < m.cols(); ++j)
                    v.push_back(m(i, j));
            return v;
        }

        template <Field F>
        auto offsets_of(const vector<Module<F>> & parts) -> vector<size_t>
        {
            vector<size_t> off;
            size_t total = 0;
            for (const auto & p : parts) {
                off.push_back(total);
                total += p.dim();
            }
            off.push_back(total);
            return off;
        }

        template <Field F>
        auto sum_of(const std::shared_ptr<const Algebra<F>> & a, const vector<Module<F>> & parts) -> Module<F>
        {
            vector<Module<F>> nonzero;
            for (const auto & p : parts)
                if (p.dim() > 0)
                    nonzero.push_back(p);
            if (nonzero.empty())
                return zero_module(a);
            if (nonzero.size() == 1)
                return nonzero[0];
            return direct_sum(nonzero);
        }

        // coordinates of many flattened maps in a fixed basis of maps
        template <Field F>
        auto coordinates_in(const F & f, const vector<Matrix<F>> & basis, const vector<Matrix<F>> & maps) -> Matrix<F>
        {
            size_t len = basis.empty() ? 0 : basis[0].rows() * basis[0].cols();
            vector<Vector<F>> cols, rhs;
            for (const auto & b : basis)
                cols.push_back(flatten(b));
            for (const auto & m : maps)
                rhs.push_back(flatten(m));
            auto x = solve(Matrix<F>::from_columns(f, len, cols), Matrix<F>::from_columns(f, len, rhs));
            if (! x)
                throw VerificationFailed("map outside the span of the chosen basis");
            return *x;
        }
    }

    template <Field F>
    auto universal_extension(const Module<F> & x, const Module<F> & s) -> Extension<F>
    {
        const auto & f = x.field();
        auto cover = projective_cover(s);
        auto spaces = map_spaces(cover.source, s, cover.map);
        const auto & omega = spaces.kernel.module;
        const auto & iota = spaces.kernel.inclusion;
        auto identity = Extension<F>{x, Matrix<F>::identity(f, x.dim()), 0};
        if (omega.dim() == 0 || x.dim() == 0)
            return identity;

        Subspace<F> boundaries(f, x.dim() * omega.dim());
        for (const auto & h : hom_space(cover.source, x))
            boundaries.add(flatten(h * iota));
        vector<Matrix<F>> cocycles;
        for (const auto & g : hom_space(omega, x))
            if (boundaries.add(flatten(g)))
                cocycles.push_back(g);
        auto d = cocycles.size();
        if (d == 0)
            return identity;

        vector<Module<F>> parts{x};
        for (size_t i = 0; i < d; ++i)
            parts.push_back(cover.source);
        auto big = direct_sum(parts);
        auto p0 = cover.source.dim();
        vector<Vector<F>> relations;
        for (size_t i = 0; i < d; ++i)
            for (size_t w = 0; w < omega.dim(); ++w) {
                Vector<F> v(big.dim(), f.zero());
                for (size_t r = 0; r < x.dim(); ++r)
                    v[r] = cocycles[i](r, w);
                for (size_t r = 0; r < p0; ++r)
                    v[x.dim() + i * p0 + r] = f.neg(iota(r, w));
                relations.push_back(std::move(v));
            }
        auto q = quotient_module(big, submodule_space(big, relations));
        vector<size_t> first(x.dim());
        for (size_t i = 0; i < x.dim(); ++i)
            first[i] = i;
        return Extension<F>{q.module, q.projection.select_columns(first), d};
    }

    template <Field F>
    auto characteristic_tilting(const std::shared_ptr<const Algebra<F>> & a, size_t cap) -> TiltingData<F>
    {
        auto deltas = strat_family(a, StratKind::Standard);
        vector<Resolution<F>> res;
        for (const auto & d : deltas)
            res.push_back(minimal_resolution(d, 3, false));
        auto step_cap = a->dim() * a->dim();
        TiltingData<F> t{{}, zero_module(a), DimensionValue::exact(0), {}};
        for (size_t l = 0; l < a->vertex_count(); ++l) {
            auto x = deltas[l];
            size_t steps = 0;
            for (bool changed = true; changed;) {
                changed = false;
                for (auto mu : a->order()) {
                    if (ext_from_resolution(res[mu], x, 1) == 0)
                        continue;
                    x = universal_extension(x, deltas[mu]).module;
                    changed = true;
                    if (++steps > step_cap)
                        throw NonConvergent("universal extensions for vertex " + a->vertex_name(l) + " did not stabilise within " + std::to_string(step_cap) + " steps");
                }
            }
            auto label = "T(" + a->vertex_name(l) + ")";
            if (local_end_radical(x))
                t.summands.push_back(x.with_label(label));
            else {
                Rng rng(l + 1);
                optional<Module<F>> chosen;
                for (auto & s : indecomposable_summands(x, rng))
                    if (s.module.dim_vector()[l] > 0) {
                        if (chosen)
                            throw VerificationFailed("more than one summand of the extension meets vertex " + a->vertex_name(l));
                        chosen = s.module;
                    }
                if (! chosen)
                    throw VerificationFailed("no summand of the extension meets vertex " + a->vertex_name(l));
                t.summands.push_back(chosen->with_label(label));
            }
            t.steps.push_back(steps);
        }
        t.total = sum_of(a, t.summands).with_label("T");
        t.pd = projective_dimension(t.total, cap);
        return t;
    }

    template <Field F>
    auto characteristic_cotilting(const std::shared_ptr<const Algebra<F>> & a, size_t cap) -> TiltingData<F>
    {
        auto op = characteristic_tilting(a->opposite(), cap);
        TiltingData<F> c{{}, zero_module(a), op.pd, op.steps};
        for (size_t l = 0; l < op.summands.size(); ++l)
            c.summands.push_back(dualize(op.summands[l]).with_label("C(" + a->vertex_name(l) + ")"));
        c.total = sum_of(a, c.summands).with_label("C");
        return c;
    }

    namespace
    {
        template <Field F>
        auto in_add(const Module<F> & m, const vector<Module<F>> & classes, Rng & rng) -> bool
        {
            if (m.dim() == 0)
                return true;
            for (const auto & s : indecomposable_summands(m, rng)) {
                bool found = false;
                for (const auto & q : classes)
                    if (indecomposable_isomorphism(s.module, q)) {
                        found = true;
                        break;
                    }
                if (! found)
                    return false;
            }
            return true;
        }

        // minimal left add(Q)-approximation X -> sum of copies of the Q_j
        template <Field F>
        auto left_approximation(const Module<F> & x, const vector<Module<F>> & qs, const vector<vector<Matrix<F>>> & radicals) -> std::pair<Module<F>, Matrix<F>>
        {
            const auto & f = x.field();
            vector<vector<Matrix<F>>> homs;
            for (const auto & q : qs)
                homs.push_back(hom_space(x, q));
            vector<Module<F>> parts;
            Matrix<F> phi(f, 0, x.dim());
            for (size_t j = 0; j < qs.size(); ++j) {
                Subspace<F> radical_maps(f, qs[j].dim() * x.dim());
                for (size_t k = 0; k < qs.size(); ++k) {
                    const auto & through = k == j ? radicals[j] : hom_space(qs[k], qs[j]);
                    for (const auto & h : homs[k])
                        for (const auto & g : through)
                            radical_maps.add(flatten(g * h));
                }
                for (const auto & h : homs[j])
                    if (radical_maps.add(flatten(h))) {
                        parts.push_back(qs[j]);
                        phi = Matrix<F>::vstack(phi, h);
                    }
            }
            return {sum_of(x.algebra(), parts), phi};
        }
    }

    template <Field F>
    auto is_generalized_tilting(const Module<F> & m, size_t cap) -> TiltingCheck<F>
    {
        TiltingCheck<F> c;
        auto r = minimal_resolution(m, cap);
        c.pd = r.projective_dimension();
        if (c.pd.is_infinite()) {
            c.answer = Answer::No;
            c.reason = "infinite projective dimension";
            return c;
        }
        if (! c.pd.is_exact()) {
            c.answer = Answer::Inconclusive;
            c.reason = "projective dimension not determined within the cap";
            return c;
        }
        auto depth = c.pd.value + 2;
        auto rr = minimal_resolution(m, depth + 2, false);
        for (size_t i = 1; i <= depth; ++i)
            if (ext_from_resolution(rr, m, i) != 0) {
                c.answer = Answer::No;
                c.reason = "Ext^" + std::to_string(i) + "(M, M) is nonzero";
                return c;
            }

        Rng rng(17);
        vector<Module<F>> classes;
        for (const auto & s : indecomposable_summands(m, rng)) {
            bool seen = false;
            for (const auto & q : classes)
                seen = seen || indecomposable_isomorphism(q, s.module).has_value();
            if (! seen)
                classes.push_back(s.module);
        }
        vector<vector<Matrix<F>>> radicals;
        for (const auto & q : classes)
            radicals.push_back(*local_end_radical(q));

        auto current = regular_module(m.algebra());
        for (size_t step = 0; step <= cap; ++step) {
            if (in_add(current, classes, rng)) {
                c.coresolution.push_back(current.dim());
                c.answer = Answer::Yes;
                c.reason = "coresolution of length " + std::to_string(step);
                return c;
            }
            auto [target, phi] = left_approximation(current, classes, radicals);
            if (rank(phi) != current.dim()) {
                c.answer = Answer::No;
                c.reason = step == 0 ? "the regular module does not embed in add(M)" : "a cokernel does not embed in add(M)";
                return c;
            }
            c.coresolution.push_back(target.dim());
            current = map_spaces(current, target, phi).cokernel.module;
        }
        c.answer = Answer::Inconclusive;
        c.reason = "coresolution did not terminate within the cap";
        return c;
    }

    template <Field F>
    auto ringel_dual(const std::shared_ptr<const Algebra<F>> & a, const TiltingData<F> & t) -> RingelData<F>
    {
        const auto & f = a->field();
        const auto & total = t.total;
        auto n = a->vertex_count();
        auto off = offsets_of(t.summands);
        auto embed = [&](const Matrix<F> & h, size_t from, size_t to) {
            Matrix<F> m(f, total.dim(), total.dim());
            m.set_block(off[to], off[from], h);
            return m;
        };

        typename Algebra<F>::Data data{f, a->vertex_names(), {}, {}, {}, vector<size_t>(n), {}, {}, std::nullopt};
        vector<Matrix<F>> basis;
        for (size_t l = 0; l < n; ++l)
            for (size_t m = 0; m < n; ++m) {
                vector<Matrix<F>> maps;
                if (l == m) {
                    auto rad = local_end_radical(t.summands[l]);
                    if (! rad)
                        throw NonSplit("End(T(" + a->vertex_name(l) + ")) is not local");
                    data.idempotents[l] = basis.size();
                    maps.push_back(Matrix<F>::identity(f, t.summands[l].dim()));
                    maps.insert(maps.end(), rad->begin(), rad->end());
                }
                else
                    maps = hom_space(t.summands[l], t.summands[m]);
                for (size_t k = 0; k < maps.size(); ++k) {
                    // a map T(l) -> T(m) lies in e_l R e_m
                    data.target.push_back(l);
                    data.source.push_back(m);
                    if (l == m && k == 0)
                        data.labels.push_back("e" + a->vertex_name(l));
                    else
                        data.labels.push_back("h" + a->vertex_name(l) + a->vertex_name(m) + "_" + std::to_string(l == m ? k : k + 1));
                    basis.push_back(embed(maps[k], l, m));
                }
            }
        auto dim = basis.size();
        data.products.assign(dim * dim, {});
        vector<Matrix<F>> products;
        vector<std::pair<size_t, size_t>> where;
        for (size_t i = 0; i < dim; ++i)
            for (size_t j = 0; j < dim; ++j) {
                if (data.source[i] != data.target[j])
                    continue;
                auto p = basis[j] * basis[i];
                if (p.is_zero())
                    continue;
                products.push_back(std::move(p));
                where.emplace_back(i, j);
            }
        if (! products.empty()) {
            auto coords = coordinates_in(f, basis, products);
            for (size_t c = 0; c < where.size(); ++c) {
                auto [i, j] = where[c];
                for (size_t k = 0; k < dim; ++k)
                    if (! f.is_zero(coords(k, c)))
                        data.products[i * dim + j].push_back({k, coords(k, c)});
            }
        }
        data.order.assign(a->order().rbegin(), a->order().rend());
        auto r = Algebra<F>::create(std::move(data));
        auto problems = validate(*r);
        if (! problems.empty())
            throw VerificationFailed("Ringel dual is not a valid algebra: " + problems[0]);
        RingelData<F> rd{t, r, std::move(basis), off, false};
        rd.ringel_sss = is_sss(r).sss;
        return rd;
    }

    template <Field F>
    auto ringel_functor(const RingelData<F> & rd, const Module<F> & m) -> Module<F>
    {
        const auto & f = m.field();
        const auto & t = rd.tilting;
        vector<Matrix<F>> maps;
        vector<size_t> vertex;
        for (size_t l = 0; l < t.summands.size(); ++l)
            for (const auto & h : hom_space(t.summands[l], m)) {
                Matrix<F> full(f, m.dim(), t.total.dim());
                full.set_block(0, rd.offsets[l], h);
                maps.push_back(std::move(full));
                vertex.push_back(l);
            }
        auto k = maps.size();
        const auto & r = rd.ringel;
        if (k == 0)
            return zero_module(r);
        vector<Matrix<F>> images;
        for (const auto & b : rd.basis)
            for (const auto & h : maps)
                images.push_back(h * b);
        auto coords = coordinates_in(f, maps, images);
        vector<Matrix<F>> action;
        for (size_t b = 0; b < rd.basis.size(); ++b) {
            Matrix<F> act(f, k, k);
            for (size_t j = 0; j < k; ++j)
                for (size_t i = 0; i < k; ++i)
                    act(i, j) = coords(i, b * k + j);
            action.push_back(std::move(act));
        }
        return Module<F>(r, std::move(vertex), std::move(action), m.label().empty() ? string{} : "F" + m.label());
    }

    template <Field F>
    auto ringel_isomorphic_to_algebra(const RingelData<F> & rd) -> optional<bool>
    {
        const auto & t = rd.tilting.total;
        const auto & a = t.algebra();
        const auto & f = a->field();
        auto reg = regular_module(a);
        auto phi = is_isomorphic(t, reg);
        if (! phi)
            return std::nullopt;
        auto inverse = solve(*phi, Matrix<F>::identity(f, a->dim()));
        if (! inverse)
            return false;
        vector<Matrix<F>> images;
        for (size_t b = 0; b < a->dim(); ++b) {
            Matrix<F> right(f, a->dim(), a->dim());
            for (size_t k = 0; k < a->dim(); ++k)
                right.set_column(k, a->multiply(a->basis_vector(k), a->basis_vector(b)));
            images.push_back(*inverse * right * *phi);
        }
        auto psi = coordinates_in(f, rd.basis, images);
        if (rank(psi) != a->dim() || rd.basis.size() != a->dim())
            return false;
        const auto & r = rd.ringel;
        for (size_t i = 0; i < a->dim(); ++i)
            for (size_t j = 0; j < a->dim(); ++j)
                if (! (psi.apply(a->multiply(a->basis_vector(i), a->basis_vector(j))) == r->multiply(psi.column(i), psi.column(j))))
                    return false;
        return true;
    }

    template <Field F>
    auto ringel_dual_properly_stratified(const RingelData<F> & rd) -> RingelStratification<F>
    {
        RingelStratification<F> out;
        out.direct = stratify(rd.ringel).properly_stratified;
        const auto & t = rd.tilting;
        const auto & a = t.total.algebra();
        vector<Module<F>> ns;
        for (size_t l = 0; l < t.summands.size(); ++l) {
            vector<Module<F>> lower;
            for (size_t m = 0; m < t.summands.size(); ++m)
                if (a->rank(m) < a->rank(l))
                    lower.push_back(t.summands[m]);
            if (lower.empty())
                ns.push_back(t.summands[l]);
            else {
                auto tr = trace(sum_of(a, lower), t.summands[l]);
                vector<Vector<F>> cols;
                for (size_t c = 0; c < tr.inclusion.cols(); ++c)
                    cols.push_back(tr.inclusion.column(c));
                ns.push_back(quotient_module(t.summands[l], submodule_space(t.summands[l], cols)).module);
            }
            out.n_dims.push_back(ns.back().dim());
        }
        auto via = Answer::Yes;
        for (const auto & s : t.summands) {
            out.n_chains.push_back(has_filtration(s, ns));
            auto x = out.n_chains.back().answer;
            if (x == Answer::No || via == Answer::No)
                via = Answer::No;
            else if (x == Answer::Inconclusive)
                via = Answer::Inconclusive;
        }
        out.via_n = via;
        out.answer = out.direct != Answer::Inconclusive ? out.direct : out.via_n;
        return out;
    }

    template <Field F>
    auto two_step_tilting(const RingelData<F> & rd, size_t cap) -> TwoStep<F>
    {
        const auto & f = rd.ringel->field();
        const auto & r = rd.ringel;
        const auto & t = rd.tilting;
        const auto & a = t.total.algebra();
        auto tr = characteristic_tilting(r, cap);
        auto rel_source = [&](size_t v) {
            vector<size_t> out;
            for (size_t i = 0; i < r->dim(); ++i)
                if (r->source(i) == v)
                    out.push_back(i);
            return out;
        };
        // block of a map T -> T from T(from) to T(to)
        auto restrict = [&](const Matrix<F> & m, size_t from, size_t to) {
            return m.block(rd.offsets[to], rd.offsets[from], t.summands[to].dim(), t.summands[from].dim());
        };

        TwoStep<F> out{{}, zero_module(a), tr, DimensionValue::exact(0), true, Answer::Inconclusive, {}};
        for (size_t l = 0; l < tr.summands.size(); ++l) {
            const auto & y = tr.summands[l];
            auto c0 = projective_cover(y);
            auto k = map_spaces(c0.source, y, c0.map).kernel;
            auto c1 = projective_cover(k.module);
            vector<Module<F>> x0, x1;
            for (auto v : c0.tops)
                x0.push_back(t.summands[v]);
            for (auto v : c1.tops)
                x1.push_back(t.summands[v]);
            auto m0 = sum_of(a, x0);
            if (c1.tops.empty()) {
                out.summands.push_back(m0.with_label("H(" + a->vertex_name(l) + ")"));
                continue;
            }
            auto m1 = sum_of(a, x1);
            auto d = k.inclusion * c1.map;
            auto off0 = offsets_of(x0), off1 = offsets_of(x1);
            Matrix<F> phi(f, m0.dim(), m1.dim());
            for (size_t kk = 0; kk < c1.tops.size(); ++kk) {
                auto b = c1.tops[kk];
                auto positions_b = rel_source(b);
                auto local = std::find(positions_b.begin(), positions_b.end(), r->idempotent(b)) - positions_b.begin();
                auto column = d.column(c1.offsets[kk] + local);
                for (size_t j = 0; j < c0.tops.size(); ++j) {
                    auto aj = c0.tops[j];
                    auto positions = rel_source(aj);
                    Matrix<F> block(f, t.summands[aj].dim(), t.summands[b].dim());
                    for (size_t p = 0; p < positions.size(); ++p) {
                        const auto & coeff = column[c0.offsets[j] + p];
                        if (! f.is_zero(coeff))
                            block.add_scaled(restrict(rd.basis[positions[p]], b, aj), coeff);
                    }
                    phi.set_block(off0[j], off1[kk], block);
                }
            }
            if (! is_homomorphism(m1, m0, phi))
                throw VerificationFailed("induced presentation map is not a homomorphism");
            out.summands.push_back(map_spaces(m1, m0, phi).cokernel.module.with_label("H(" + a->vertex_name(l) + ")"));
        }
        out.total = sum_of(a, out.summands).with_label("H");
        auto image = ringel_functor(rd, out.total);
        out.functor_check = is_isomorphic(image, tr.total).has_value();
        if (! out.functor_check)
            throw VerificationFailed("F(H) is not isomorphic to the characteristic tilting module of R");
        out.pd = projective_dimension(out.total, cap);
        out.nablabar_filtered = has_cofiltration(out.total, strat_family(a->opposite(), StratKind::ProperStandard)).answer;
        out.tilting_check = is_generalized_tilting(out.total, cap);
        return out;
    }

    template <Field F>
    auto Duality<F>::star(const Module<F> & m) const -> Module<F>
    {
        vector<Matrix<F>> action;
        for (size_t b = 0; b < algebra->dim(); ++b)
            action.push_back(m.action_of(sigma.column(b)).transposed());
        return Module<F>(m.algebra(), m.vertices(), std::move(action), m.label().empty() ? string{} : m.label() + "*");
    }

    template <Field F>
    auto verify_duality(const std::shared_ptr<const Algebra<F>> & a, const vector<std::pair<size_t, size_t>> & arrows) -> Duality<F>
    {
        const auto & f = a->field();
        if (! a->paths())
            throw NotAntiInvolution("the algebra carries no path basis");
        const auto & paths = *a->paths();
        auto na = paths.arrow_names.size();
        vector<optional<size_t>> sigma_arrow(na);
        for (auto [x, y] : arrows) {
            if (sigma_arrow[x] && *sigma_arrow[x] != y)
                throw NotAntiInvolution("arrow " + paths.arrow_names[x] + " is assigned twice");
            sigma_arrow[x] = y;
        }
        for (size_t x = 0; x < na; ++x) {
            if (! sigma_arrow[x])
                throw NotAntiInvolution("arrow " + paths.arrow_names[x] + " has no image");
            auto y = *sigma_arrow[x];
            if (! sigma_arrow[y] || *sigma_arrow[y] != x)
                throw NotAntiInvolution("the map is not an involution at " + paths.arrow_names[x]);
            if (paths.arrow_source[y] != paths.arrow_target[x] || paths.arrow_target[y] != paths.arrow_source[x])
                throw NotAntiInvolution(paths.arrow_names[x] + " -> " + paths.arrow_names[y] + " does not reverse the arrow");
        }
        vector<size_t> arrow_basis(na, a->dim());
        for (size_t i = 0; i < a->dim(); ++i)
            if (paths.words[i].size() == 1)
                arrow_basis[paths.words[i][0]] = i;
        for (size_t x = 0; x < na; ++x)
            if (arrow_basis[x] == a->dim())
                throw NotAntiInvolution("arrow " + paths.arrow_names[x] + " is not a basis element");

        Matrix<F> sigma(f, a->dim(), a->dim());
        for (size_t i = 0; i < a->dim(); ++i) {
            const auto & w = paths.words[i];
            Vector<F> image;
            if (w.empty())
                image = a->basis_vector(i);
            else {
                image = a->basis_vector(arrow_basis[*sigma_arrow[w.back()]]);
                for (size_t k = w.size() - 1; k-- > 0;)
                    image = a->multiply(image, a->basis_vector(arrow_basis[*sigma_arrow[w[k]]]));
            }
            sigma.set_column(i, image);
        }
        for (size_t v = 0; v < a->vertex_count(); ++v)
            if (! (sigma.column(a->idempotent(v)) == a->basis_vector(a->idempotent(v))))
                throw NotAntiInvolution("vertex " + a->vertex_name(v) + " is not fixed");
        if (! (sigma * sigma).is_identity())
            throw NotAntiInvolution("the extension does not square to the identity");
        for (size_t i = 0; i < a->dim(); ++i)
            for (size_t j = 0; j < a->dim(); ++j) {
                auto lhs = sigma.apply(a->multiply(a->basis_vector(i), a->basis_vector(j)));
                auto rhs = a->multiply(sigma.column(j), sigma.column(i));
                if (! (lhs == rhs))
                    throw NotAntiInvolution("relations are not preserved: sigma(" + a->label(i) + " " + a->label(j) + ") differs from sigma(" + a->label(j) + ") sigma(" + a->label(i) + ")");
            }
        Duality<F> d{a, sigma, true};
        for (size_t v = 0; v < a->vertex_count(); ++v) {
            auto l = simple(a, v);
            d.simples_fixed = d.simples_fixed && is_isomorphic(d.star(l), l).has_value();
        }
        return d;
    }

    template <Field F>
    auto fdim_delta_estimate(const std::shared_ptr<const Algebra<F>> & a, const TiltingData<F> & t, const optional<RingelData<F>> &, const optional<TwoStep<F>> & h, std::uint64_t seed) -> FdimDelta
    {
        const auto & f = a->field();
        FdimDelta out;
        if (h && h->ringel_tilting.pd.is_exact()) {
            out.exact = true;
            out.value = h->ringel_tilting.pd.value;
            out.lower = out.value;
            out.upper = out.value;
            out.route = "ringel_tilting";
            try {
                auto dd = delta_dim(h->total);
                if (dd.is_exact())
                    out.delta_dim_h = dd.value;
            }
            catch (const Undetermined &) {
            }
            return out;
        }

        // 0 -> X -> Y -> M -> 0 with X, Y in add(T) and M outside F(Delta) gives dim_Delta(M) = 1
        auto n = t.summands.size();
        out.search_cap = 2 * t.total.dim();
        out.tries = 8;
        vector<vector<size_t>> vectors;
        vector<size_t> mult(n, 0);
        std::function<void(size_t, size_t)> enumerate = [&](size_t i, size_t used) {
            if (i == n) {
                if (used > 0)
                    vectors.push_back(mult);
                return;
            }
            for (size_t c = 0; used + c * t.summands[i].dim() <= out.search_cap; ++c) {
                mult[i] = c;
                enumerate(i + 1, used + c * t.summands[i].dim());
                if (t.summands[i].dim() == 0)
                    break;
            }
            mult[i] = 0;
        };
        enumerate(0, 0);
        auto build = [&](const vector<size_t> & v) {
            vector<Module<F>> parts;
            for (size_t i = 0; i < n; ++i)
                for (size_t c = 0; c < v[i]; ++c)
                    parts.push_back(t.summands[i]);
            return sum_of(a, parts);
        };
        vector<Module<F>> built;
        for (const auto & v : vectors)
            built.push_back(build(v));
        auto nablabars = sum_of(a, strat_family(a, StratKind::ProperCostandard));
        Rng rng(seed);
        size_t largest = 0;
        bool found = false;
        for (size_t x = 0; x < built.size() && ! found; ++x)
            for (size_t y = 0; y < built.size() && ! found; ++y) {
                if (built[x].dim() >= built[y].dim())
                    continue;
                bool fits = true;
                auto dx = built[x].dim_vector(), dy = built[y].dim_vector();
                for (size_t v = 0; v < dx.size(); ++v)
                    fits = fits && dx[v] <= dy[v];
                if (! fits)
                    continue;
                ++out.pairs_checked;
                largest = std::max(largest, built[x].dim());
                auto homs = hom_space(built[x], built[y]);
                for (size_t k = 0; k < out.tries && ! homs.empty() && ! found; ++k) {
                    auto g = random_combination(homs, built[y].dim(), built[x].dim(), f, rng);
                    if (rank(g) != built[x].dim())
                        continue;
                    ++out.injections_seen;
                    auto coker = map_spaces(built[x], built[y], g).cokernel.module;
                    found = ext(coker, nablabars, 1) > 0;
                }
            }
        std::ostringstream bound;
        auto field_size = f.characteristic() == 0 ? 2003.0 : static_cast<double>(f.characteristic());
        bound.precision(3);
        bound << std::pow(static_cast<double>(largest) / field_size, static_cast<double>(out.tries));
        out.error_bound = bound.str();
        if (! found) {
            out.exact = true;
            out.value = 0;
            out.upper = 0;
            out.route = "injection_certificate";
        }
        else {
            out.lower = 1;
            out.route = "injection_found";
        }
        return out;
    }

    namespace
    {
        template <Field F>
        auto witness_modules(const Analysis<F> & an) -> vector<Module<F>>
        {
            const auto & a = an.algebra;
            vector<Module<F>> out;
            if (an.tilting)
                out.insert(out.end(), an.tilting->summands.begin(), an.tilting->summands.end());
            if (an.two_step)
                out.insert(out.end(), an.two_step->summands.begin(), an.two_step->summands.end());
            for (auto kind : {StratKind::Standard, StratKind::ProperStandard, StratKind::Costandard, StratKind::ProperCostandard})
                for (auto & m : strat_family(a, kind))
                    out.push_back(m);
            for (size_t v = 0; v < a->vertex_count(); ++v) {
                out.push_back(simple(a, v));
                out.push_back(injective(a, v));
            }
            return out;
        }

        auto relation(size_t x, size_t y) -> string
        {
            return x < y ? "<" : x == y ? "=" : ">";
        }

        struct CheckBuilder
        {
            vector<BoundCheck> & checks;

            auto add(string id, string statement, bool applicable, optional<bool> holds, string detail) -> void
            {
                string verdict = ! applicable ? "inapplicable" : ! holds ? "undetermined" : *holds ? "pass" : "fail";
                checks.push_back({std::move(id), std::move(statement), std::move(verdict), std::move(detail)});
            }
        };
    }

    template <Field F>
    auto analyse(const std::shared_ptr<const Algebra<F>> & a, const QuiverPresentation * q, size_t cap, std::uint64_t seed) -> Analysis<F>
    {
        Analysis<F> an;
        an.algebra = a;
        an.cap = cap;
        an.seed = seed;
        an.strat = stratify(a, FiltrationOptions{seed});
        an.gldim = global_dimension(a, cap);
        if (q && q->duality) {
            try {
                an.duality = verify_duality(a, *q->duality);
            }
            catch (const NotAntiInvolution & e) {
                an.duality_error = e.what();
            }
        }
        if (! an.strat.sss.sss)
            return an;
        an.tilting = characteristic_tilting(a, cap);
        an.cotilting = characteristic_cotilting(a, cap);
        if (an.duality) {
            an.t_self_dual = is_isomorphic(an.duality->star(an.tilting->total), an.tilting->total, seed).has_value();
            for (const auto & s : an.tilting->summands)
                an.summands_self_dual.push_back(is_isomorphic(an.duality->star(s), s, seed).has_value());
        }
        an.ringel = ringel_dual(a, *an.tilting);
        an.ringel_strat = ringel_dual_properly_stratified(*an.ringel);
        if (an.ringel_strat->answer == Answer::Yes) {
            try {
                an.two_step = two_step_tilting(*an.ringel, cap);
            }
            catch (const VerificationFailed & e) {
                an.two_step_note = e.what();
            }
        }
        else
            an.two_step_note = "Ringel dual is not properly stratified";
        vector<Module<F>> injectives;
        for (size_t v = 0; v < a->vertex_count(); ++v)
            injectives.push_back(injective(a, v));
        an.injectives_tilting = is_generalized_tilting(sum_of(a, injectives), cap);
        an.fdim = fdim_report(an);
        if (an.two_step)
            an.ifdim = ifdim_check(an);
        else
            an.fdim->ifdim_note = "inapplicable: " + an.two_step_note;
        return an;
    }

    template <Field F>
    auto fdim_report(Analysis<F> & an) -> FdimReport
    {
        if (! an.tilting)
            throw PreconditionFailed("the finitistic dimension report needs an SSS algebra");
        const auto & a = an.algebra;
        FdimReport r;
        r.pd_t = an.tilting->pd;
        r.id_c = an.cotilting ? an.cotilting->pd : DimensionValue::infinite();
        r.fdim_delta = fdim_delta_estimate(a, *an.tilting, an.ringel, an.two_step, an.seed);
        bool duality = an.duality.has_value();
        bool ps = an.strat.properly_stratified == Answer::Yes;
        bool qh = an.strat.quasi_hereditary == Answer::Yes;
        bool rps = an.ringel_strat && an.ringel_strat->answer == Answer::Yes && an.two_step;
        bool t_self_dual = duality && an.t_self_dual.value_or(false) && std::all_of(an.summands_self_dual.begin(), an.summands_self_dual.end(), [](bool b) { return b; });
        if (! r.fdim_delta.exact && duality && r.pd_t.is_exact())
            r.fdim_delta.upper = r.pd_t.value;

        // witnesses of finite projective dimension
        for (const auto & m : witness_modules(an)) {
            auto pd = projective_dimension(m, an.cap);
            if (pd.is_exact())
                r.lower_bounds.push_back({pd.value, "pd(" + m.label() + ")"});
        }
        if (ps && duality && r.fdim_delta.exact)
            r.lower_bounds.push_back({2 * r.fdim_delta.value, "twice fdim_delta (properly stratified with duality)"});

        auto n = a->vertex_count();
        r.upper_bounds.push_back({2 * n - 2, "2n-2"});
        if (r.fdim_delta.exact && r.pd_t.is_exact())
            r.upper_bounds.push_back({r.fdim_delta.value + r.pd_t.value, "fdim_delta + pd(T)"});
        if (t_self_dual && r.pd_t.is_exact())
            r.upper_bounds.push_back({2 * r.pd_t.value, "2 pd(T) (duality with T self-dual)"});
        optional<size_t> pd_i;
        if (an.injectives_tilting && an.injectives_tilting->answer == Answer::Yes && an.injectives_tilting->pd.is_exact()) {
            pd_i = an.injectives_tilting->pd.value;
            r.upper_bounds.push_back({*pd_i, "pd(I) (I generalized tilting)"});
            r.lower_bounds.push_back({*pd_i, "pd(I)"});
        }
        if (an.gldim.is_exact())
            r.upper_bounds.push_back({an.gldim.value, "gldim"});
        if (rps && an.two_step->pd.is_exact())
            r.upper_bounds.push_back({an.two_step->pd.value, "pd(H) (Ringel dual properly stratified)"});

        for (const auto & b : r.lower_bounds)
            r.lower = std::max(r.lower, b.value);
        for (const auto & b : r.upper_bounds)
            r.upper = r.upper ? std::min(*r.upper, b.value) : b.value;
        r.fdim_exact = r.upper && *r.upper == r.lower;
        optional<size_t> fdim;
        if (r.fdim_exact)
            fdim = r.lower;

        auto fd = r.fdim_delta.exact ? optional<size_t>(r.fdim_delta.value) : std::nullopt;
        auto pt = r.pd_t.is_exact() ? optional<size_t>(r.pd_t.value) : std::nullopt;
        if (fd && fdim && pt) {
            auto x = 2 * *fd, y = *fdim, z = *fd + *pt, w = 2 * *pt;
            r.chain = std::to_string(x) + " " + relation(x, y) + " " + std::to_string(y) + " " + relation(y, w) + " " + std::to_string(w);
            r.full_chain = std::to_string(x) + " " + relation(x, y) + " " + std::to_string(y) + " " + relation(y, z) + " " + std::to_string(z) + " " + relation(z, w) + " " + std::to_string(w);
            r.chain_holds = x <= y && y <= z && z <= w;
        }
        else {
            r.chain = "undetermined";
            r.full_chain = "undetermined";
        }
        if (r.upper && r.lower > *r.upper)
            r.chain_holds = false;

        auto both = [](optional<size_t> x, optional<size_t> y) { return x && y; };
        CheckBuilder cb{r.checks};
        auto pdr = an.two_step && an.two_step->ringel_tilting.pd.is_exact() ? optional<size_t>(an.two_step->ringel_tilting.pd.value) : std::nullopt;
        auto pdh = an.two_step && an.two_step->pd.is_exact() ? optional<size_t>(an.two_step->pd.value) : std::nullopt;
        auto gd = an.gldim.is_exact() ? optional<size_t>(an.gldim.value) : std::nullopt;

        cb.add("fdim_equals_twice_pd_t", "fdim = 2 pd(T) when a simple preserving duality fixes every T(lambda)", t_self_dual,
               both(fdim, pt) ? optional<bool>(*fdim == 2 * *pt) : std::nullopt, "");
        cb.add("gldim_equals_twice_pd_t", "gldim = 2 pd(T) for quasi-hereditary algebras with a simple preserving duality", duality && qh,
               both(gd, pt) ? optional<bool>(*gd == 2 * *pt) : std::nullopt, "gldim " + an.gldim.to_string());
        cb.add("fdim_at_most_fdim_delta_plus_pd_t", "fdim <= fdim_delta + pd(T)", true,
               fdim && fd && pt ? optional<bool>(*fdim <= *fd + *pt) : std::nullopt, "");
        cb.add("pd_h_equals_fdim", "pd(H) = fdim when the Ringel dual is properly stratified", rps,
               both(pdh, fdim) ? optional<bool>(*pdh == *fdim) : std::nullopt, "");
        cb.add("fdim_equals_twice_pd_ringel_tilting", "fdim = 2 pd(T^R) for properly stratified A and R with a duality", ps && duality && rps,
               both(fdim, pdr) ? optional<bool>(*fdim == 2 * *pdr) : std::nullopt, "");
        cb.add("fdim_at_least_twice_fdim_delta", "fdim >= 2 fdim_delta for properly stratified algebras with a duality", ps && duality,
               both(fdim, fd) ? optional<bool>(*fdim >= 2 * *fd) : std::nullopt, "");
        cb.add("pd_ringel_tilting_equals_fdim_delta", "pd(T^R) = fdim_delta when A and R are properly stratified", ps && rps,
               both(pdr, fd) ? optional<bool>(*pdr == *fd) : std::nullopt, "");
        cb.add("fdim_equals_twice_fdim_delta", "fdim = 2 fdim_delta for properly stratified A and R with a duality", ps && duality && rps,
               both(fdim, fd) ? optional<bool>(*fdim == 2 * *fd) : std::nullopt, "");
        cb.add("fdim_equals_pd_injectives", "fdim = pd(I) when I is a generalized tilting module", pd_i.has_value(),
               both(fdim, pd_i) ? optional<bool>(*fdim == *pd_i) : std::nullopt, "");
        cb.add("fdim_at_most_2n_minus_2", "fdim <= 2n - 2", true, r.upper ? optional<bool>(r.lower <= 2 * n - 2) : std::nullopt, "n = " + std::to_string(n));
        cb.add("chain_ordering", "2 fdim_delta <= fdim <= fdim_delta + pd(T) <= 2 pd(T)", true, fd && fdim && pt ? optional<bool>(r.chain_holds) : std::nullopt, r.full_chain);

        string conj_verdict = fd && fdim && pt ? (*fdim == *fd + *pt ? "holds" : "fails") : "undetermined";
        r.conjecture = {"fdim_equals_fdim_delta_plus_pd_t", "conjecture: fdim = fdim_delta + pd(T)", conj_verdict, "recorded only, never used as a bound"};
        return r;
    }

    template <Field F>
    auto ifdim_check(const Analysis<F> & an) -> IfdimCheck
    {
        IfdimCheck c;
        if (! an.two_step)
            return c;
        c.applicable = true;
        const auto & a = an.algebra;
        const auto & f = a->field();
        c.pd_h = an.two_step->pd;
        Rng rng(an.seed);
        auto nb = strat_family(a, StratKind::ProperCostandard);
        for (size_t l = 0; l < a->vertex_count(); ++l) {
            const auto & h = an.two_step->summands[l];
            auto homs = hom_space(nb[l], h);
            bool inj = false;
            for (size_t k = 0; k < 8 && ! inj && ! homs.empty(); ++k)
                inj = rank(random_combination(homs, h.dim(), nb[l].dim(), f, rng)) == nb[l].dim();
            c.injections.push_back(inj);
            c.holds = c.holds && inj;
        }
        vector<Module<F>> samples;
        if (an.cotilting)
            samples.insert(samples.end(), an.cotilting->summands.begin(), an.cotilting->summands.end());
        for (auto & m : strat_family(a, StratKind::Costandard))
            samples.push_back(m);
        for (auto & m : nb)
            samples.push_back(m);
        if (an.duality) {
            for (const auto & m : an.tilting->summands)
                samples.push_back(an.duality->star(m));
            for (auto & m : strat_family(a, StratKind::Standard))
                samples.push_back(an.duality->star(m));
        }
        for (const auto & m : samples) {
            auto id = injective_dimension(m, an.cap);
            c.samples.emplace_back(m.label(), id);
            if (id.is_exact()) {
                c.lower_bound = std::max(c.lower_bound, id.value);
                if (c.pd_h.is_exact() && id.value > c.pd_h.value)
                    c.holds = false;
            }
        }
        return c;
    }

    auto to_json(const FdimDelta & d) -> nlohmann::json
    {
        nlohmann::json j;
        if (d.exact)
            j["value"] = {{"status", "exact"}, {"value", d.value}};
        else {
            nlohmann::json v{{"status", "interval"}, {"lower", d.lower}};
            if (d.upper)
                v["upper"] = *d.upper;
            j["value"] = v;
        }
        j["route"] = d.route;
        if (d.route != "ringel_tilting")
            j["certificate"] = {{"search_cap", d.search_cap}, {"pairs_checked", d.pairs_checked}, {"tries", d.tries}, {"injections_with_delta_cokernel", d.injections_seen}, {"miss_probability_per_pair", d.error_bound}};
        if (d.delta_dim_h)
            j["delta_dim_h"] = {{"status", "exact"}, {"value", *d.delta_dim_h}};
        return j;
    }

    auto to_json(const FdimReport & r) -> nlohmann::json
    {
        using nlohmann::json;
        json j;
        j["pd_t"] = r.pd_t.to_json();
        j["id_c"] = r.id_c.to_json();
        j["fdim_delta"] = to_json(r.fdim_delta);
        if (r.fdim_exact)
            j["fdim"] = {{"status", "exact"}, {"value", r.lower}};
        else {
            json v{{"status", "interval"}, {"lower", r.lower}};
            if (r.upper)
                v["upper"] = *r.upper;
            j["fdim"] = v;
        }
        json lows = json::array(), highs = json::array();
        for (const auto & b : r.lower_bounds)
            lows.push_back({{"value", b.value}, {"source", b.source}});
        for (const auto & b : r.upper_bounds)
            highs.push_back({{"value", b.value}, {"source", b.source}});
        j["lower_bounds"] = lows;
        j["upper_bounds"] = highs;
        j["chain"] = r.chain;
        j["full_chain"] = r.full_chain;
        j["chain_holds"] = r.chain_holds;
        json checks = json::array();
        for (const auto & c : r.checks)
            checks.push_back({{"id", c.id}, {"statement", c.statement}, {"verdict", c.verdict}, {"detail", c.detail}});
        j["checks"] = checks;
        j["conjecture"] = {{"id", r.conjecture.id}, {"statement", r.conjecture.statement}, {"verdict", r.conjecture.verdict}, {"detail", r.conjecture.detail}};
        if (r.ifdim_note)
            j["ifdim_note"] = *r.ifdim_note;
        return j;
    }

    auto to_json(const IfdimCheck & c) -> nlohmann::json
    {
        using nlohmann::json;
        json samples = json::array();
        for (const auto & [label, id] : c.samples)
            samples.push_back({{"module", label}, {"injective_dimension", id.to_json()}});
        return {{"applicable", c.applicable}, {"injections", c.injections}, {"samples", samples}, {"ifdim_lower_bound", {{"status", "at_least"}, {"value", c.lower_bound}}}, {"holds", c.holds}, {"pd_h", c.pd_h.to_json()}};
    }

#define STRATA_INSTANTIATE_TILTING(F)                                                                                  \
    template auto universal_extension(const Module<F> &, const Module<F> &) -> Extension<F>;                           \
    template auto characteristic_tilting(const std::shared_ptr<const Algebra<F>> &, size_t) -> TiltingData<F>;         \
    template auto characteristic_cotilting(const std::shared_ptr<const Algebra<F>> &, size_t) -> TiltingData<F>;       \
    template auto is_generalized_tilting(const Module<F> &, size_t) -> TiltingCheck<F>;                                \
    template auto ringel_dual(const std::shared_ptr<const Algebra<F>> &, const TiltingData<F> &) -> RingelData<F>;     \
    template auto ringel_functor(const RingelData<F> &, const Module<F> &) -> Module<F>;                               \
    template auto ringel_isomorphic_to_algebra(const RingelData<F> &) -> optional<bool>;                               \
    template auto ringel_dual_properly_stratified(const RingelData<F> &) -> RingelStratification<F>;                   \
    template auto two_step_tilting(const RingelData<F> &, size_t) -> TwoStep<F>;                                       \
    template struct Duality<F>;                                                                                        \
    template auto verify_duality(const std::shared_ptr<const Algebra<F>> &, const vector<std::pair<size_t, size_t>> &) -> Duality<F>; \
    template auto fdim_delta_estimate(const std::shared_ptr<const Algebra<F>> &, const TiltingData<F> &, const optional<RingelData<F>> &, const optional<TwoStep<F>> &, std::uint64_t) -> FdimDelta; \
    template auto analyse(const std::shared_ptr<const Algebra<F>> &, const QuiverPresentation *, size_t, std::uint64_t) -> Analysis<F>; \
    template auto fdim_report(Analysis<F> &) -> FdimReport;                                                            \
    template auto ifdim_check(const Analysis<F> &) -> IfdimCheck;

    STRATA_INSTANTIATE_TILTING(PrimeField)
    STRATA_INSTANTIATE_TILTING(RationalField)
}
