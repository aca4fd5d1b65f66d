#include <strata/errors.hh>
#include <strata/module.hh>

#include <algorithm>
#include <functional>

using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace strata
{
    template <Field F>
    Module<F>::Module(AlgebraPtr a, vector<size_t> vertex, vector<Matrix<F>> action, string label)
    {
        if (action.size() != a->dim())
            throw std::invalid_argument("module needs one action matrix per algebra basis element");
        for (const auto & m : action)
            if (m.rows() != vertex.size() || m.cols() != vertex.size())
                throw std::invalid_argument("action matrix has the wrong shape");
        auto d = std::make_shared<Data>();
        const auto & gens = a->generators();
        for (const auto & g : gens) {
            Matrix<F> m(a->field(), vertex.size(), vertex.size());
            for (size_t b = 0; b < g.size(); ++b)
                if (! a->field().is_zero(g[b]))
                    m.add_scaled(action[b], g[b]);
            d->gen_action.push_back(std::move(m));
        }
        d->algebra = std::move(a);
        d->vertex = std::move(vertex);
        d->action = std::move(action);
        d->label = std::move(label);
        _d = std::move(d);
    }

    template <Field F>
    auto Module<F>::with_label(string label) const -> Module
    {
        Module copy = *this;
        auto d = std::make_shared<Data>(*_d);
        d->label = std::move(label);
        copy._d = std::move(d);
        return copy;
    }

    template <Field F>
    auto Module<F>::action_of(const Vector<F> & a) const -> Matrix<F>
    {
        Matrix<F> m(field(), dim(), dim());
        for (size_t b = 0; b < a.size(); ++b)
            if (! field().is_zero(a[b]))
                m.add_scaled(action(b), a[b]);
        return m;
    }

    template <Field F>
    auto Module<F>::dim_vector() const -> vector<size_t>
    {
        vector<size_t> out(algebra()->vertex_count(), 0);
        for (auto v : vertices())
            ++out[v];
        return out;
    }

    template <Field F>
    auto Module<F>::indices_at(size_t v) const -> vector<size_t>
    {
        vector<size_t> out;
        for (size_t i = 0; i < dim(); ++i)
            if (vertex(i) == v)
                out.push_back(i);
        return out;
    }

    template <Field F>
    auto same_algebra(const Module<F> & m, const Module<F> & n) -> bool
    {
        return m.algebra() == n.algebra() || m.algebra()->same_as(*n.algebra());
    }

    namespace
    {
        template <Field F>
        auto unit_vector(const F & f, size_t n, size_t i) -> Vector<F>
        {
            Vector<F> v(n, f.zero());
            v[i] = f.one();
            return v;
        }

        // splits a vector into its vertex components
        template <Field F>
        auto homogeneous_parts(const Module<F> & m, const Vector<F> & v) -> vector<Vector<F>>
        {
            const auto & f = m.field();
            auto n = m.algebra()->vertex_count();
            vector<Vector<F>> parts(n);
            vector<bool> used(n, false);
            for (size_t i = 0; i < v.size(); ++i) {
                if (f.is_zero(v[i]))
                    continue;
                auto x = m.vertex(i);
                if (! used[x]) {
                    parts[x].assign(v.size(), f.zero());
                    used[x] = true;
                }
                parts[x][i] = v[i];
            }
            vector<Vector<F>> out;
            for (size_t x = 0; x < n; ++x)
                if (used[x])
                    out.push_back(std::move(parts[x]));
            return out;
        }

        template <Field F>
        auto pivot_vertex(const Module<F> & m, const Subspace<F> & u, size_t k) -> size_t
        {
            return m.vertex(u.pivots()[k]);
        }

        template <Field F>
        auto require_same_algebra(const Module<F> & m, const Module<F> & n) -> void
        {
            if (! same_algebra(m, n))
                throw std::invalid_argument("modules over different algebras");
        }
    }

    template <Field F>
    auto zero_module(const std::shared_ptr<const Algebra<F>> & a) -> Module<F>
    {
        vector<Matrix<F>> action(a->dim(), Matrix<F>(a->field(), 0, 0));
        return Module<F>(a, {}, std::move(action), "0");
    }

    template <Field F>
    auto regular_module(const std::shared_ptr<const Algebra<F>> & a) -> Module<F>
    {
        vector<size_t> vertex;
        for (size_t i = 0; i < a->dim(); ++i)
            vertex.push_back(a->target(i));
        vector<Matrix<F>> action;
        for (size_t b = 0; b < a->dim(); ++b)
            action.push_back(a->left_matrix(b));
        return Module<F>(a, std::move(vertex), std::move(action), "A");
    }

    template <Field F>
    auto projective(const std::shared_ptr<const Algebra<F>> & a, size_t lambda) -> Module<F>
    {
        const auto & f = a->field();
        vector<size_t> basis, vertex;
        vector<size_t> pos(a->dim(), a->dim());
        for (size_t i = 0; i < a->dim(); ++i)
            if (a->source(i) == lambda) {
                pos[i] = basis.size();
                basis.push_back(i);
                vertex.push_back(a->target(i));
            }
        vector<Matrix<F>> action;
        for (size_t c = 0; c < a->dim(); ++c) {
            Matrix<F> m(f, basis.size(), basis.size());
            for (size_t j = 0; j < basis.size(); ++j)
                for (const auto & t : a->product(c, basis[j]))
                    m(pos[t.index], j) = t.coeff;
            action.push_back(std::move(m));
        }
        return Module<F>(a, std::move(vertex), std::move(action), "P(" + a->vertex_name(lambda) + ")");
    }

    template <Field F>
    auto simple(const std::shared_ptr<const Algebra<F>> & a, size_t lambda) -> Module<F>
    {
        auto p = projective(a, lambda);
        auto top = quotient_module(p, radical_space(p)).module;
        if (top.dim() != 1)
            throw NonSplit("simple module at vertex " + a->vertex_name(lambda) + " has dimension " + std::to_string(top.dim()) + " over the ground field");
        return top.with_label("L(" + a->vertex_name(lambda) + ")");
    }

    template <Field F>
    auto injective(const std::shared_ptr<const Algebra<F>> & a, size_t lambda) -> Module<F>
    {
        return dualize(projective(a->opposite(), lambda)).with_label("I(" + a->vertex_name(lambda) + ")");
    }

    template <Field F>
    auto check_module(const Module<F> & m) -> vector<string>
    {
        vector<string> problems;
        const auto & a = *m.algebra();
        const auto & f = m.field();
        auto id = Matrix<F>::identity(f, m.dim());
        if (! (m.action_of(a.unit()) == id))
            problems.push_back("unit does not act as the identity");
        for (size_t v = 0; v < a.vertex_count(); ++v) {
            Matrix<F> e(f, m.dim(), m.dim());
            for (size_t i = 0; i < m.dim(); ++i)
                if (m.vertex(i) == v)
                    e(i, i) = f.one();
            if (! (m.action(a.idempotent(v)) == e))
                problems.push_back("basis is not adapted at vertex " + a.vertex_name(v));
        }
        for (size_t i = 0; i < a.dim() && problems.size() < 10; ++i)
            for (size_t j = 0; j < a.dim(); ++j) {
                Matrix<F> expected(f, m.dim(), m.dim());
                for (const auto & t : a.product(i, j))
                    expected.add_scaled(m.action(t.index), t.coeff);
                if (! (m.action(i) * m.action(j) == expected)) {
                    problems.push_back("action is not multiplicative on (" + a.label(i) + ", " + a.label(j) + ")");
                    break;
                }
            }
        return problems;
    }

    template <Field F>
    auto is_homomorphism(const Module<F> & m, const Module<F> & n, const Matrix<F> & f) -> bool
    {
        if (f.rows() != n.dim() || f.cols() != m.dim())
            return false;
        for (size_t b = 0; b < m.algebra()->dim(); ++b)
            if (! (f * m.action(b) == n.action(b) * f))
                return false;
        return true;
    }

    template <Field F>
    auto radical_space(const Module<F> & m) -> Subspace<F>
    {
        Subspace<F> r(m.field(), m.dim());
        for (size_t k = 0; k < m.algebra()->generators().size(); ++k) {
            const auto & g = m.generator_action(k);
            for (size_t c = 0; c < m.dim(); ++c)
                r.add(g.column(c));
        }
        return r;
    }

    template <Field F>
    auto socle_space(const Module<F> & m) -> Subspace<F>
    {
        const auto & f = m.field();
        auto ngens = m.algebra()->generators().size();
        Matrix<F> stacked(f, 0, m.dim());
        for (size_t k = 0; k < ngens; ++k)
            stacked = Matrix<F>::vstack(stacked, m.generator_action(k));
        Subspace<F> s(f, m.dim());
        for (const auto & v : kernel_basis(stacked))
            for (auto & part : homogeneous_parts(m, v))
                s.add(part);
        return s;
    }

    template <Field F>
    auto space_dim_vector(const Module<F> & m, const Subspace<F> & u) -> vector<size_t>
    {
        vector<size_t> out(m.algebra()->vertex_count(), 0);
        for (size_t k = 0; k < u.dim(); ++k)
            ++out[pivot_vertex(m, u, k)];
        return out;
    }

    template <Field F>
    auto submodule_space(const Module<F> & m, const vector<Vector<F>> & vectors) -> Subspace<F>
    {
        Subspace<F> u(m.field(), m.dim());
        vector<Vector<F>> queue;
        for (const auto & v : vectors)
            for (auto & part : homogeneous_parts(m, v))
                if (u.add(part))
                    queue.push_back(std::move(part));
        auto ngens = m.algebra()->generators().size();
        while (! queue.empty()) {
            auto v = std::move(queue.back());
            queue.pop_back();
            for (size_t k = 0; k < ngens; ++k) {
                auto w = m.generator_action(k).apply(v);
                if (! is_zero_vector(m.field(), w) && u.add(w))
                    queue.push_back(std::move(w));
            }
        }
        return u;
    }

    template <Field F>
    auto submodule_from_space(const Module<F> & m, const Subspace<F> & u) -> Submodule<F>
    {
        const auto & f = m.field();
        auto r = u.dim();
        vector<size_t> vertex;
        for (size_t k = 0; k < r; ++k)
            vertex.push_back(pivot_vertex(m, u, k));
        vector<Matrix<F>> action;
        for (size_t b = 0; b < m.algebra()->dim(); ++b) {
            Matrix<F> a(f, r, r);
            const auto & rho = m.action(b);
            for (size_t j = 0; j < r; ++j) {
                auto w = rho.apply(u.basis()[j]);
                for (size_t i = 0; i < r; ++i)
                    a(i, j) = w[u.pivots()[i]];
            }
            action.push_back(std::move(a));
        }
        return Submodule<F>{Module<F>(m.algebra(), std::move(vertex), std::move(action)), u.basis_matrix()};
    }

    template <Field F>
    auto submodule_generated(const Module<F> & m, const vector<Vector<F>> & vectors) -> Submodule<F>
    {
        return submodule_from_space(m, submodule_space(m, vectors));
    }

    template <Field F>
    auto quotient_module(const Module<F> & m, const Subspace<F> & u) -> QuotientModule<F>
    {
        const auto & f = m.field();
        auto comp = u.non_pivots();
        auto q = comp.size();
        Matrix<F> proj(f, q, m.dim());
        for (size_t j = 0; j < m.dim(); ++j) {
            auto r = u.reduce(unit_vector(f, m.dim(), j));
            for (size_t k = 0; k < q; ++k)
                proj(k, j) = r[comp[k]];
        }
        vector<size_t> vertex;
        for (auto c : comp)
            vertex.push_back(m.vertex(c));
        vector<Matrix<F>> action;
        for (size_t b = 0; b < m.algebra()->dim(); ++b)
            action.push_back((proj * m.action(b)).select_columns(comp));
        return QuotientModule<F>{Module<F>(m.algebra(), std::move(vertex), std::move(action)), std::move(proj)};
    }

    template <Field F>
    auto map_spaces(const Module<F> & m, const Module<F> & n, const Matrix<F> & f) -> MapSpaces<F>
    {
        require_same_algebra(m, n);
        auto ker = submodule_space(m, kernel_basis(f));
        vector<Vector<F>> cols;
        for (size_t c = 0; c < f.cols(); ++c)
            cols.push_back(f.column(c));
        auto im = submodule_space(n, cols);
        return MapSpaces<F>{submodule_from_space(m, ker), submodule_from_space(n, im), quotient_module(n, im)};
    }

    template <Field F>
    auto direct_sum(const vector<Module<F>> & parts) -> Module<F>
    {
        if (parts.empty())
            throw std::invalid_argument("direct sum of no modules");
        const auto & a = parts[0].algebra();
        size_t total = 0;
        vector<size_t> vertex;
        for (const auto & p : parts) {
            require_same_algebra(parts[0], p);
            total += p.dim();
            vertex.insert(vertex.end(), p.vertices().begin(), p.vertices().end());
        }
        vector<Matrix<F>> action;
        for (size_t b = 0; b < a->dim(); ++b) {
            Matrix<F> m(a->field(), total, total);
            size_t off = 0;
            for (const auto & p : parts) {
                m.set_block(off, off, p.action(b));
                off += p.dim();
            }
            action.push_back(std::move(m));
        }
        return Module<F>(a, std::move(vertex), std::move(action));
    }

    template <Field F>
    auto radical_submodule(const Module<F> & m) -> Submodule<F>
    {
        return submodule_from_space(m, radical_space(m));
    }

    template <Field F>
    auto socle_submodule(const Module<F> & m) -> Submodule<F>
    {
        return submodule_from_space(m, socle_space(m));
    }

    template <Field F>
    auto top_vector(const Module<F> & m) -> vector<size_t>
    {
        auto d = m.dim_vector();
        auto r = space_dim_vector(m, radical_space(m));
        for (size_t i = 0; i < d.size(); ++i)
            d[i] -= r[i];
        return d;
    }

    template <Field F>
    auto socle_vector(const Module<F> & m) -> vector<size_t>
    {
        return space_dim_vector(m, socle_space(m));
    }

    template <Field F>
    auto radical_layers(const Module<F> & m) -> vector<vector<size_t>>
    {
        const auto & f = m.field();
        vector<vector<size_t>> layers;
        vector<Vector<F>> current;
        for (size_t i = 0; i < m.dim(); ++i)
            current.push_back(unit_vector(f, m.dim(), i));
        auto current_dims = m.dim_vector();
        auto ngens = m.algebra()->generators().size();
        while (! current.empty()) {
            Subspace<F> next(f, m.dim());
            for (const auto & v : current)
                for (size_t k = 0; k < ngens; ++k)
                    next.add(m.generator_action(k).apply(v));
            auto next_dims = space_dim_vector(m, next);
            vector<size_t> layer(current_dims.size());
            for (size_t i = 0; i < layer.size(); ++i)
                layer[i] = current_dims[i] - next_dims[i];
            layers.push_back(std::move(layer));
            current = next.basis();
            current_dims = std::move(next_dims);
        }
        return layers;
    }

    template <Field F>
    auto socle_layers(const Module<F> & m) -> vector<vector<size_t>>
    {
        const auto & f = m.field();
        vector<vector<size_t>> layers;
        Subspace<F> s(f, m.dim());
        vector<size_t> prev(m.algebra()->vertex_count(), 0);
        auto ngens = m.algebra()->generators().size();
        while (s.dim() < m.dim()) {
            auto comp = s.non_pivots();
            Matrix<F> stacked(f, 0, m.dim());
            for (size_t k = 0; k < ngens; ++k) {
                const auto & g = m.generator_action(k);
                Matrix<F> reduced(f, comp.size(), m.dim());
                for (size_t c = 0; c < m.dim(); ++c) {
                    auto r = s.reduce(g.column(c));
                    for (size_t i = 0; i < comp.size(); ++i)
                        reduced(i, c) = r[comp[i]];
                }
                stacked = Matrix<F>::vstack(stacked, reduced);
            }
            Subspace<F> next(f, m.dim());
            if (ngens == 0)
                for (size_t i = 0; i < m.dim(); ++i)
                    next.add(unit_vector(f, m.dim(), i));
            else
                for (const auto & v : kernel_basis(stacked))
                    for (auto & part : homogeneous_parts(m, v))
                        next.add(part);
            auto dims = space_dim_vector(m, next);
            vector<size_t> layer(dims.size());
            for (size_t i = 0; i < dims.size(); ++i)
                layer[i] = dims[i] - prev[i];
            layers.push_back(std::move(layer));
            prev = std::move(dims);
            s = std::move(next);
        }
        return layers;
    }

    namespace
    {
        // Data for computing Hom(M, -) from a presentation of M by its top.
        template <Field F>
        struct TopPresentation
        {
            vector<size_t> tops;          // basis index of each top representative
            vector<size_t> top_vertex;    // its vertex
            vector<std::pair<size_t, size_t>> p0;  // (generator, algebra basis index)
            Matrix<F> pi;                 // M.dim x |p0|
        };

        template <Field F>
        auto top_presentation(const Module<F> & m) -> TopPresentation<F>
        {
            const auto & a = *m.algebra();
            TopPresentation<F> t{{}, {}, {}, Matrix<F>(m.field(), m.dim(), 0)};
            t.tops = radical_space(m).non_pivots();
            for (auto c : t.tops)
                t.top_vertex.push_back(m.vertex(c));
            for (size_t k = 0; k < t.tops.size(); ++k)
                for (size_t b = 0; b < a.dim(); ++b)
                    if (a.source(b) == t.top_vertex[k])
                        t.p0.emplace_back(k, b);
            t.pi = Matrix<F>(m.field(), m.dim(), t.p0.size());
            for (size_t p = 0; p < t.p0.size(); ++p) {
                auto [k, b] = t.p0[p];
                t.pi.set_column(p, m.action(b).column(t.tops[k]));
            }
            return t;
        }

        // Matrix N.dim x unknowns sending the chosen generator images to the image of x in N.
        template <Field F>
        auto evaluate_on(const TopPresentation<F> & t, const Module<F> & n, const vector<vector<size_t>> & n_at, const vector<size_t> & offset, size_t unknowns, const Vector<F> & x) -> Matrix<F>
        {
            const auto & f = n.field();
            Matrix<F> out(f, n.dim(), unknowns);
            for (size_t p = 0; p < x.size(); ++p) {
                if (f.is_zero(x[p]))
                    continue;
                auto [k, b] = t.p0[p];
                const auto & rho = n.action(b);
                const auto & cols = n_at[t.top_vertex[k]];
                for (size_t s = 0; s < cols.size(); ++s)
                    for (size_t r = 0; r < n.dim(); ++r)
                        if (! f.is_zero(rho(r, cols[s])))
                            out(r, offset[k] + s) = f.add(out(r, offset[k] + s), f.mul(x[p], rho(r, cols[s])));
            }
            return out;
        }
    }

    template <Field F>
    auto hom_space(const Module<F> & m, const Module<F> & n) -> vector<Matrix<F>>
    {
        require_same_algebra(m, n);
        const auto & f = m.field();
        if (m.dim() == 0 || n.dim() == 0)
            return {};
        auto t = top_presentation(m);
        vector<vector<size_t>> n_at;
        for (size_t v = 0; v < m.algebra()->vertex_count(); ++v)
            n_at.push_back(n.indices_at(v));
        vector<size_t> offset;
        size_t unknowns = 0;
        for (size_t k = 0; k < t.tops.size(); ++k) {
            offset.push_back(unknowns);
            unknowns += n_at[t.top_vertex[k]].size();
        }
        if (unknowns == 0)
            return {};

        Matrix<F> constraints(f, 0, unknowns);
        for (const auto & x : kernel_basis(t.pi))
            constraints = Matrix<F>::vstack(constraints, evaluate_on(t, n, n_at, offset, unknowns, x));
        auto solutions = kernel_basis(constraints);
        if (solutions.empty())
            return {};

        auto preimages = solve(t.pi, Matrix<F>::identity(f, m.dim()));
        if (! preimages)
            throw std::logic_error("top representatives do not generate the module");
        vector<Matrix<F>> per_column;
        for (size_t j = 0; j < m.dim(); ++j)
            per_column.push_back(evaluate_on(t, n, n_at, offset, unknowns, preimages->column(j)));

        vector<Matrix<F>> out;
        for (const auto & u : solutions) {
            Matrix<F> phi(f, n.dim(), m.dim());
            for (size_t j = 0; j < m.dim(); ++j)
                phi.set_column(j, per_column[j].apply(u));
            out.push_back(std::move(phi));
        }
        return out;
    }

    template <Field F>
    auto trace(const Module<F> & x, const Module<F> & m) -> Submodule<F>
    {
        vector<Vector<F>> cols;
        for (const auto & h : hom_space(x, m))
            for (size_t c = 0; c < h.cols(); ++c)
                cols.push_back(h.column(c));
        return submodule_generated(m, cols);
    }

    template <Field F>
    auto trace_of_projectives(const Module<F> & m, const vector<size_t> & vertices) -> Submodule<F>
    {
        vector<Vector<F>> gens;
        for (size_t i = 0; i < m.dim(); ++i)
            if (std::find(vertices.begin(), vertices.end(), m.vertex(i)) != vertices.end())
                gens.push_back(unit_vector(m.field(), m.dim(), i));
        return submodule_generated(m, gens);
    }

    template <Field F>
    auto projective_cover(const Module<F> & m) -> Cover<F>
    {
        const auto & a = m.algebra();
        const auto & f = m.field();
        auto tops = radical_space(m).non_pivots();
        Cover<F> c{zero_module(a), Matrix<F>(f, m.dim(), 0), {}, {}};
        if (tops.empty())
            return c;
        vector<Module<F>> parts;
        size_t off = 0;
        vector<Vector<F>> cols;
        for (auto t : tops) {
            auto v = m.vertex(t);
            parts.push_back(projective(a, v));
            c.tops.push_back(v);
            c.offsets.push_back(off);
            off += parts.back().dim();
            for (size_t b = 0; b < a->dim(); ++b)
                if (a->source(b) == v)
                    cols.push_back(m.action(b).column(t));
        }
        c.source = parts.size() == 1 ? parts[0] : direct_sum(parts);
        c.map = Matrix<F>::from_columns(f, m.dim(), cols);
        return c;
    }

    template <Field F>
    auto dualize(const Module<F> & m) -> Module<F>
    {
        vector<Matrix<F>> action;
        for (const auto & r : m.actions())
            action.push_back(r.transposed());
        string label = m.label().empty() ? string{} : "D" + m.label();
        return Module<F>(m.algebra()->opposite(), m.vertices(), std::move(action), label);
    }

    template <Field F>
    auto inflate(const Module<F> & m, const IdempotentQuotient<F> & q) -> Module<F>
    {
        vector<size_t> vertex;
        for (auto v : m.vertices())
            vertex.push_back(q.retained[v]);
        vector<Matrix<F>> action;
        for (size_t b = 0; b < q.parent->dim(); ++b)
            action.push_back(m.action_of(q.projection.column(b)));
        return Module<F>(q.parent, std::move(vertex), std::move(action), m.label());
    }

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
        auto unflatten(const F & f, size_t rows, size_t cols, const Vector<F> & v) -> Matrix<F>
        {
            Matrix<F> m(f, rows, cols);
            for (size_t i = 0; i < rows; ++i)
                for (size_t j = 0; j < cols; ++j)
                    m(i, j) = v[i * cols + j];
            return m;
        }

        template <Field F>
        auto trace_of(const Matrix<F> & m) -> typename F::Element
        {
            auto t = m.field().zero();
            for (size_t i = 0; i < m.rows(); ++i)
                t = m.field().add(t, m(i, i));
            return t;
        }

        template <Field F>
        auto local_radical_from(const Module<F> & m, const vector<Matrix<F>> & end) -> optional<vector<Matrix<F>>>
        {
            const auto & f = m.field();
            auto d = m.dim();
            if (d == 0 || end.empty())
                return std::nullopt;
            auto inv_d = f.inv(f.from_int(static_cast<std::int64_t>(d)));
            auto id = Matrix<F>::identity(f, d);
            Subspace<F> j(f, d * d);
            vector<Matrix<F>> psi;
            for (const auto & phi : end) {
                auto c = f.mul(trace_of(phi), inv_d);
                auto p = phi - id.scaled(c);
                if (j.add(flatten(p)))
                    psi.push_back(p);
            }
            if (j.dim() + 1 != end.size())
                return std::nullopt;
            // J generates a nilpotent algebra iff the products J^k vanish
            vector<Matrix<F>> w = psi;
            size_t last = j.dim();
            for (size_t step = 0; step <= end.size() + 1; ++step) {
                if (w.empty()) {
                    vector<Matrix<F>> rad;
                    for (const auto & b : j.basis())
                        rad.push_back(unflatten(f, d, d, b));
                    return rad;
                }
                Subspace<F> next(f, d * d);
                vector<Matrix<F>> nw;
                for (const auto & x : w)
                    for (const auto & y : psi) {
                        auto p = x * y;
                        if (next.add(flatten(p)))
                            nw.push_back(std::move(p));
                    }
                if (next.dim() >= last && ! nw.empty())
                    return std::nullopt;
                last = next.dim();
                w = std::move(nw);
            }
            return std::nullopt;
        }

        template <Field F>
        auto matrix_power_at_least(Matrix<F> m, size_t n) -> Matrix<F>
        {
            size_t k = 1;
            while (k < n) {
                m = m * m;
                k *= 2;
            }
            return m;
        }

        template <Field F>
        auto split_module(const Module<F> & m, Rng & rng) -> vector<Summand<F>>
        {
            const auto & f = m.field();
            auto d = m.dim();
            if (d == 0)
                return {};
            auto end = hom_space(m, m);
            if (local_radical_from(m, end))
                return {Summand<F>{m, Matrix<F>::identity(f, d)}};

            auto id = Matrix<F>::identity(f, d);
            for (int attempt = 0; attempt < 48; ++attempt) {
                auto phi = random_combination(end, d, d, f, rng);
                auto roots = field_roots(f, characteristic_polynomial(phi), rng.next());
                for (const auto & c : roots) {
                    auto psi = matrix_power_at_least(phi - id.scaled(c), d);
                    auto ker = kernel_basis(psi);
                    if (ker.empty() || ker.size() == d)
                        continue;
                    auto ks = submodule_space(m, ker);
                    vector<Vector<F>> cols;
                    for (size_t j = 0; j < d; ++j)
                        cols.push_back(psi.column(j));
                    auto is = submodule_space(m, cols);
                    vector<Summand<F>> out;
                    for (const auto * space : {&ks, &is}) {
                        auto sub = submodule_from_space(m, *space);
                        for (auto & inner : split_module(sub.module, rng))
                            out.push_back(Summand<F>{inner.module, sub.inclusion * inner.inclusion});
                    }
                    return out;
                }
            }
            throw NonSplit("could not split a module of dimension " + std::to_string(d) + " whose endomorphism ring is not local");
        }
    }

    template <Field F>
    auto local_end_radical(const Module<F> & m) -> optional<vector<Matrix<F>>>
    {
        return local_radical_from(m, hom_space(m, m));
    }

    template <Field F>
    auto is_indecomposable(const Module<F> & m) -> bool
    {
        if (m.dim() == 0)
            return false;
        if (local_end_radical(m))
            return true;
        Rng rng(0x5eed);
        return indecomposable_summands(m, rng).size() == 1;
    }

    template <Field F>
    auto indecomposable_summands(const Module<F> & m, Rng & rng) -> vector<Summand<F>>
    {
        return split_module(m, rng);
    }

    template <Field F>
    auto module_key(const Module<F> & m) -> ModuleKey
    {
        return ModuleKey{m.dim(), m.dim_vector(), radical_layers(m), socle_layers(m)};
    }

    template <Field F>
    auto indecomposable_isomorphism(const Module<F> & x, const Module<F> & y) -> optional<Matrix<F>>
    {
        if (x.dim() != y.dim() || x.dim_vector() != y.dim_vector())
            return std::nullopt;
        if (x.dim() == 0)
            return Matrix<F>(x.field(), 0, 0);
        auto there = hom_space(x, y);
        if (there.empty())
            return std::nullopt;
        auto back = hom_space(y, x);
        // for a local End(X), g f is invertible for some f, g iff some basis product is
        for (const auto & f : there)
            for (const auto & g : back)
                if (rank(g * f) == x.dim())
                    return f;
        return std::nullopt;
    }

    template <Field F>
    auto random_combination(const vector<Matrix<F>> & basis, size_t rows, size_t cols, const F & f, Rng & rng) -> Matrix<F>
    {
        Matrix<F> m(f, rows, cols);
        for (const auto & b : basis)
            m.add_scaled(b, f.from_random(rng.next()));
        return m;
    }

    template <Field F>
    auto decompose(const Module<F> & m, std::uint64_t seed) -> vector<DecompositionEntry<F>>
    {
        Rng rng(seed);
        vector<DecompositionEntry<F>> out;
        vector<ModuleKey> keys;
        for (auto & s : indecomposable_summands(m, rng)) {
            auto key = module_key(s.module);
            bool found = false;
            for (size_t i = 0; i < out.size(); ++i)
                if (keys[i] == key && indecomposable_isomorphism(out[i].module, s.module)) {
                    ++out[i].multiplicity;
                    found = true;
                    break;
                }
            if (! found) {
                out.push_back({s.module, 1});
                keys.push_back(std::move(key));
            }
        }
        vector<size_t> idx(out.size());
        for (size_t i = 0; i < idx.size(); ++i)
            idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
            if (keys[a] != keys[b])
                return keys[a] < keys[b];
            return out[a].multiplicity < out[b].multiplicity;
        });
        vector<DecompositionEntry<F>> sorted;
        for (auto i : idx)
            sorted.push_back(out[i]);
        return sorted;
    }

    template <Field F>
    auto is_isomorphic(const Module<F> & m, const Module<F> & n, std::uint64_t seed) -> optional<Matrix<F>>
    {
        require_same_algebra(m, n);
        const auto & f = m.field();
        if (m.dim() != n.dim() || m.dim_vector() != n.dim_vector())
            return std::nullopt;
        if (m.dim() == 0)
            return Matrix<F>(f, 0, 0);
        if (radical_layers(m) != radical_layers(n) || socle_layers(m) != socle_layers(n))
            return std::nullopt;
        auto homs = hom_space(m, n);
        if (homs.empty())
            return std::nullopt;
        Rng rng(seed);
        for (int attempt = 0; attempt < 4; ++attempt) {
            auto phi = random_combination(homs, n.dim(), m.dim(), f, rng);
            if (rank(phi) == m.dim())
                return phi;
        }
        if (hom_space(n, m).size() != homs.size())
            return std::nullopt;

        auto sm = indecomposable_summands(m, rng);
        auto sn = indecomposable_summands(n, rng);
        if (sm.size() != sn.size())
            return std::nullopt;
        vector<bool> used(sn.size(), false);
        vector<size_t> match(sm.size());
        vector<Matrix<F>> isos;
        for (size_t i = 0; i < sm.size(); ++i) {
            bool found = false;
            for (size_t j = 0; j < sn.size() && ! found; ++j) {
                if (used[j])
                    continue;
                if (auto iso = indecomposable_isomorphism(sm[i].module, sn[j].module)) {
                    used[j] = true;
                    match[i] = j;
                    isos.push_back(*iso);
                    found = true;
                }
            }
            if (! found)
                return std::nullopt;
        }
        // assemble the witness from the summand isomorphisms
        Matrix<F> basis(f, m.dim(), 0);
        for (const auto & s : sm)
            basis = Matrix<F>::hstack(basis, s.inclusion);
        auto inv = inverse(basis);
        Matrix<F> w(f, n.dim(), m.dim());
        size_t row = 0;
        for (size_t i = 0; i < sm.size(); ++i) {
            auto k = sm[i].module.dim();
            auto proj = inv->block(row, 0, k, m.dim());
            w = w + sn[match[i]].inclusion * isos[i] * proj;
            row += k;
        }
        return w;
    }

    template <Field F>
    auto module_to_json(const Module<F> & m) -> nlohmann::json
    {
        using nlohmann::json;
        const auto & f = m.field();
        json j;
        j["dim"] = m.dim();
        j["label"] = m.label();
        json verts = json::array();
        for (auto v : m.vertices())
            verts.push_back(m.algebra()->vertex_name(v));
        j["vertices"] = verts;
        json action = json::array();
        for (size_t b = 0; b < m.algebra()->dim(); ++b)
            for (size_t r = 0; r < m.dim(); ++r)
                for (size_t c = 0; c < m.dim(); ++c)
                    if (! f.is_zero(m.action(b)(r, c)))
                        action.push_back(json::array({b, r, c, f.to_string(m.action(b)(r, c))}));
        j["action"] = action;
        return j;
    }

#define STRATA_INSTANTIATE_MODULE(F)                                                                                   \
    template class Module<F>;                                                                                          \
    template auto same_algebra(const Module<F> &, const Module<F> &) -> bool;                                          \
    template auto zero_module<F>(const std::shared_ptr<const Algebra<F>> &) -> Module<F>;                                                \
    template auto regular_module<F>(const std::shared_ptr<const Algebra<F>> &) -> Module<F>;                                            \
    template auto projective<F>(const std::shared_ptr<const Algebra<F>> &, size_t) -> Module<F>;                                         \
    template auto simple<F>(const std::shared_ptr<const Algebra<F>> &, size_t) -> Module<F>;                                             \
    template auto injective<F>(const std::shared_ptr<const Algebra<F>> &, size_t) -> Module<F>;                                          \
    template auto check_module(const Module<F> &) -> vector<string>;                                                   \
    template auto is_homomorphism(const Module<F> &, const Module<F> &, const Matrix<F> &) -> bool;                    \
    template auto hom_space(const Module<F> &, const Module<F> &) -> vector<Matrix<F>>;                                \
    template auto submodule_generated(const Module<F> &, const vector<Vector<F>> &) -> Submodule<F>;                   \
    template auto submodule_space(const Module<F> &, const vector<Vector<F>> &) -> Subspace<F>;                        \
    template auto submodule_from_space(const Module<F> &, const Subspace<F> &) -> Submodule<F>;                        \
    template auto quotient_module(const Module<F> &, const Subspace<F> &) -> QuotientModule<F>;                        \
    template auto map_spaces(const Module<F> &, const Module<F> &, const Matrix<F> &) -> MapSpaces<F>;                 \
    template auto direct_sum(const vector<Module<F>> &) -> Module<F>;                                                  \
    template auto radical_space(const Module<F> &) -> Subspace<F>;                                                     \
    template auto socle_space(const Module<F> &) -> Subspace<F>;                                                       \
    template auto radical_submodule(const Module<F> &) -> Submodule<F>;                                                \
    template auto socle_submodule(const Module<F> &) -> Submodule<F>;                                                  \
    template auto top_vector(const Module<F> &) -> vector<size_t>;                                                    \
    template auto socle_vector(const Module<F> &) -> vector<size_t>;                                                   \
    template auto radical_layers(const Module<F> &) -> vector<vector<size_t>>;                                         \
    template auto socle_layers(const Module<F> &) -> vector<vector<size_t>>;                                           \
    template auto space_dim_vector(const Module<F> &, const Subspace<F> &) -> vector<size_t>;                          \
    template auto trace(const Module<F> &, const Module<F> &) -> Submodule<F>;                                         \
    template auto trace_of_projectives(const Module<F> &, const vector<size_t> &) -> Submodule<F>;                     \
    template auto projective_cover(const Module<F> &) -> Cover<F>;                                                     \
    template auto dualize(const Module<F> &) -> Module<F>;                                                             \
    template auto inflate(const Module<F> &, const IdempotentQuotient<F> &) -> Module<F>;                              \
    template auto local_end_radical(const Module<F> &) -> optional<vector<Matrix<F>>>;                                 \
    template auto is_indecomposable(const Module<F> &) -> bool;                                                        \
    template auto indecomposable_summands(const Module<F> &, Rng &) -> vector<Summand<F>>;                             \
    template auto decompose(const Module<F> &, std::uint64_t) -> vector<DecompositionEntry<F>>;                        \
    template auto indecomposable_isomorphism(const Module<F> &, const Module<F> &) -> optional<Matrix<F>>;             \
    template auto is_isomorphic(const Module<F> &, const Module<F> &, std::uint64_t) -> optional<Matrix<F>>;           \
    template auto module_key(const Module<F> &) -> ModuleKey;                                                          \
    template auto random_combination(const vector<Matrix<F>> &, size_t, size_t, const F &, Rng &) -> Matrix<F>;        \
    template auto module_to_json(const Module<F> &) -> nlohmann::json;

    STRATA_INSTANTIATE_MODULE(PrimeField)
    STRATA_INSTANTIATE_MODULE(RationalField)
}
