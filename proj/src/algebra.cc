#include <strata/algebra.hh>
#include <strata/errors.hh>

#include <algorithm>
#include <map>
#include <sstream>

using std::size_t;
using std::string;
using std::vector;

namespace strata
{
    template <Field F>
    struct Algebra<F>::Private
    {
    };

    auto reverse_label(const string & label) -> string
    {
        vector<string> parts;
        std::stringstream ss(label);
        string part;
        while (std::getline(ss, part, '*'))
            parts.push_back(part);
        string out;
        for (size_t i = parts.size(); i-- > 0;) {
            out += parts[i];
            if (i > 0)
                out += '*';
        }
        return out;
    }

    template <Field F>
    Algebra<F>::Algebra(Private, Data data) :
        _d(std::move(data))
    {
        auto n = vertex_count();
        if (_d.order.empty())
            for (size_t v = 0; v < n; ++v)
                _d.order.push_back(v);
        if (_d.order.size() != n)
            throw InputError("order must list every vertex exactly once");
        _rank.assign(n, n);
        for (size_t r = 0; r < n; ++r) {
            if (_d.order[r] >= n || _rank[_d.order[r]] != n)
                throw InputError("order must list every vertex exactly once");
            _rank[_d.order[r]] = r;
        }
        auto d = dim();
        if (_d.source.size() != d || _d.target.size() != d || _d.products.size() != d * d || _d.idempotents.size() != n)
            throw InputError("inconsistent algebra data sizes");
    }

    template <Field F>
    auto Algebra<F>::create(Data data) -> Ptr
    {
        return std::make_shared<const Algebra>(Private{}, std::move(data));
    }

    template <Field F>
    auto Algebra<F>::multiply(const Vector<F> & a, const Vector<F> & b) const -> Vector<F>
    {
        const auto & f = field();
        Vector<F> out(dim(), f.zero());
        for (size_t i = 0; i < dim(); ++i) {
            if (f.is_zero(a[i]))
                continue;
            for (size_t j = 0; j < dim(); ++j) {
                if (f.is_zero(b[j]))
                    continue;
                auto c = f.mul(a[i], b[j]);
                for (const auto & t : product(i, j))
                    out[t.index] = f.add(out[t.index], f.mul(c, t.coeff));
            }
        }
        return out;
    }

    template <Field F>
    auto Algebra<F>::basis_vector(size_t i) const -> Vector<F>
    {
        Vector<F> v(dim(), field().zero());
        v[i] = field().one();
        return v;
    }

    template <Field F>
    auto Algebra<F>::unit() const -> Vector<F>
    {
        Vector<F> v(dim(), field().zero());
        for (auto e : _d.idempotents)
            v[e] = field().add(v[e], field().one());
        return v;
    }

    template <Field F>
    auto Algebra<F>::left_matrix(size_t i) const -> const Matrix<F> &
    {
        std::call_once(_left_once, [&] {
            for (size_t k = 0; k < dim(); ++k) {
                Matrix<F> m(field(), dim(), dim());
                for (size_t j = 0; j < dim(); ++j)
                    for (const auto & t : product(k, j))
                        m(t.index, j) = t.coeff;
                _left.push_back(std::move(m));
            }
        });
        return _left[i];
    }

    template <Field F>
    auto Algebra<F>::block(size_t mu, size_t lambda) const -> vector<size_t>
    {
        vector<size_t> out;
        for (size_t i = 0; i < dim(); ++i)
            if (target(i) == mu && source(i) == lambda)
                out.push_back(i);
        return out;
    }

    template <Field F>
    auto Algebra<F>::compute_radical() const -> void
    {
        const auto & f = field();
        auto d = dim();
        if (f.characteristic() != 0 && f.characteristic() <= d)
            throw FieldTooSmall("characteristic " + std::to_string(f.characteristic()) + " does not exceed the dimension " + std::to_string(d));

        // Dickson: rad A is the radical of the trace form of the regular representation
        Vector<F> traces(d, f.zero());
        for (size_t k = 0; k < d; ++k)
            for (size_t j = 0; j < d; ++j)
                for (const auto & t : product(k, j))
                    if (t.index == j)
                        traces[k] = f.add(traces[k], t.coeff);
        Matrix<F> gram(f, d, d);
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j)
                for (const auto & t : product(i, j))
                    gram(i, j) = f.add(gram(i, j), f.mul(t.coeff, traces[t.index]));

        auto n = vertex_count();
        vector<Subspace<F>> blocks;
        for (size_t b = 0; b < n * n; ++b)
            blocks.emplace_back(f, d);
        for (const auto & v : kernel_basis(gram))
            for (size_t mu = 0; mu < n; ++mu)
                for (size_t lambda = 0; lambda < n; ++lambda) {
                    Vector<F> part(d, f.zero());
                    bool any = false;
                    for (auto i : block(mu, lambda))
                        if (! f.is_zero(v[i])) {
                            part[i] = v[i];
                            any = true;
                        }
                    if (any)
                        blocks[mu * n + lambda].add(part);
                }

        for (size_t mu = 0; mu < n; ++mu)
            for (size_t lambda = 0; lambda < n; ++lambda) {
                const auto & rb = blocks[mu * n + lambda].basis();
                _radical.insert(_radical.end(), rb.begin(), rb.end());
                Subspace<F> square(f, d);
                for (size_t nu = 0; nu < n; ++nu)
                    for (const auto & x : blocks[mu * n + nu].basis())
                        for (const auto & y : blocks[nu * n + lambda].basis())
                            square.add(multiply(x, y));
                for (const auto & r : rb)
                    if (square.add(r)) {
                        _generators.push_back(r);
                        _gen_source.push_back(lambda);
                        _gen_target.push_back(mu);
                    }
            }
    }

    template <Field F>
    auto Algebra<F>::radical() const -> const vector<Vector<F>> &
    {
        std::call_once(_radical_once, [&] { compute_radical(); });
        return _radical;
    }

    template <Field F>
    auto Algebra<F>::generators() const -> const vector<Vector<F>> &
    {
        radical();
        return _generators;
    }

    template <Field F>
    auto Algebra<F>::generator_source(size_t k) const -> size_t
    {
        radical();
        return _gen_source[k];
    }

    template <Field F>
    auto Algebra<F>::generator_target(size_t k) const -> size_t
    {
        radical();
        return _gen_target[k];
    }

    template <Field F>
    auto Algebra<F>::opposite() const -> Ptr
    {
        if (auto back = _op_back.lock())
            return back;
        std::call_once(_op_once, [&] {
            Data op = _d;
            auto d = dim();
            for (size_t i = 0; i < d; ++i) {
                op.labels[i] = reverse_label(_d.labels[i]);
                op.source[i] = _d.target[i];
                op.target[i] = _d.source[i];
                for (size_t j = 0; j < d; ++j)
                    op.products[i * d + j] = _d.products[j * d + i];
            }
            if (op.paths) {
                std::swap(op.paths->arrow_source, op.paths->arrow_target);
                for (auto & w : op.paths->words)
                    std::reverse(w.begin(), w.end());
            }
            auto created = std::make_shared<Algebra>(Private{}, std::move(op));
            created->_op_back = this->weak_from_this();
            _op = std::move(created);
        });
        return _op;
    }

    template <Field F>
    auto Algebra<F>::with_order(vector<size_t> order) const -> Ptr
    {
        Data d = _d;
        d.order = std::move(order);
        return create(std::move(d));
    }

    template <Field F>
    auto Algebra<F>::same_as(const Algebra & other) const -> bool
    {
        if (this == &other)
            return true;
        if (dim() != other.dim() || _d.labels != other._d.labels || _d.idempotents != other._d.idempotents || _d.order != other._d.order ||
            _d.source != other._d.source || _d.target != other._d.target || ! (field().spec() == other.field().spec()))
            return false;
        for (size_t p = 0; p < _d.products.size(); ++p) {
            const auto & a = _d.products[p];
            const auto & b = other._d.products[p];
            if (a.size() != b.size())
                return false;
            for (size_t t = 0; t < a.size(); ++t)
                if (a[t].index != b[t].index || ! field().equal(a[t].coeff, b[t].coeff))
                    return false;
        }
        return true;
    }

    template <Field F>
    auto validate(const Algebra<F> & a) -> vector<string>
    {
        vector<string> problems;
        const auto & f = a.field();
        auto d = a.dim();
        auto n = a.vertex_count();

        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j)
                for (const auto & t : a.product(i, j))
                    if (t.index >= d)
                        problems.push_back("product index out of range");
        if (! problems.empty())
            return problems;

        auto basis = [&](size_t i) { return a.basis_vector(i); };
        for (size_t i = 0; i < d && problems.size() < 10; ++i)
            for (size_t j = 0; j < d && problems.size() < 10; ++j) {
                auto ij = a.multiply(basis(i), basis(j));
                for (size_t k = 0; k < d; ++k) {
                    auto left = a.multiply(ij, basis(k));
                    auto right = a.multiply(basis(i), a.multiply(basis(j), basis(k)));
                    if (left != right) {
                        problems.push_back("associativity fails on (" + a.label(i) + ", " + a.label(j) + ", " + a.label(k) + ")");
                        break;
                    }
                }
            }

        auto one = a.unit();
        for (size_t i = 0; i < d; ++i) {
            auto b = basis(i);
            if (a.multiply(one, b) != b || a.multiply(b, one) != b) {
                problems.push_back("unit is not a two-sided identity on " + a.label(i));
                break;
            }
        }

        for (size_t mu = 0; mu < n; ++mu)
            for (size_t lambda = 0; lambda < n; ++lambda) {
                auto e = basis(a.idempotent(mu));
                auto prod = a.multiply(e, basis(a.idempotent(lambda)));
                auto expected = mu == lambda ? e : Vector<F>(d, f.zero());
                if (prod != expected)
                    problems.push_back("idempotents " + a.vertex_name(mu) + ", " + a.vertex_name(lambda) + " are not orthogonal idempotents");
            }

        for (size_t i = 0; i < d; ++i) {
            auto b = basis(i);
            auto sandwiched = a.multiply(basis(a.idempotent(a.target(i))), a.multiply(b, basis(a.idempotent(a.source(i)))));
            if (sandwiched != b)
                problems.push_back("basis element " + a.label(i) + " is not adapted to the idempotents");
        }

        try {
            const auto & rad = a.radical();
            for (size_t v = 0; v < n; ++v) {
                auto local_block = a.block(v, v);
                size_t local = local_block.size();
                size_t in_rad = 0;
                for (const auto & r : rad)
                    if (! f.is_zero(r[a.idempotent(v)]) || std::any_of(local_block.begin(), local_block.end(), [&](size_t i) { return ! f.is_zero(r[i]); }))
                        ++in_rad;
                if (local - in_rad != 1)
                    problems.push_back("idempotent at vertex " + a.vertex_name(v) + " is not primitive or the field does not split it");
            }
        }
        catch (const FieldTooSmall & e) {
            problems.push_back(e.what());
        }
        return problems;
    }

    template <Field F>
    auto quotient_by_idempotent_ideal(const typename Algebra<F>::Ptr & a, size_t cut) -> IdempotentQuotient<F>
    {
        const auto & f = a->field();
        auto d = a->dim();
        if (cut >= a->vertex_count())
            throw InputError("vertex out of range");

        // A e A is spanned by products x e y with x, y basis elements
        Subspace<F> ideal(f, d);
        auto e = a->idempotent(cut);
        for (size_t i = 0; i < d; ++i) {
            if (a->source(i) != cut)
                continue;
            for (size_t j = 0; j < d; ++j)
                if (a->target(j) == cut)
                    ideal.add(a->multiply(a->basis_vector(i), a->basis_vector(j)));
        }
        ideal.add(a->basis_vector(e));

        IdempotentQuotient<F> q{a, nullptr, cut, Matrix<F>(f, 0, 0), {}, {}};
        q.kept_basis = ideal.non_pivots();
        auto qd = q.kept_basis.size();
        vector<size_t> new_vertex(a->vertex_count(), a->vertex_count());
        for (size_t v = 0; v < a->vertex_count(); ++v)
            if (v != cut) {
                new_vertex[v] = q.retained.size();
                q.retained.push_back(v);
            }

        q.projection = Matrix<F>(f, qd, d);
        for (size_t j = 0; j < d; ++j) {
            auto r = ideal.reduce(a->basis_vector(j));
            for (size_t k = 0; k < qd; ++k)
                q.projection(k, j) = r[q.kept_basis[k]];
        }

        typename Algebra<F>::Data data;
        data.field = f;
        for (auto v : q.retained)
            data.vertex_names.push_back(a->vertex_name(v));
        for (auto v : q.retained)
            data.idempotents.push_back(std::find(q.kept_basis.begin(), q.kept_basis.end(), a->idempotent(v)) - q.kept_basis.begin());
        for (auto v : a->order())
            if (v != cut)
                data.order.push_back(new_vertex[v]);
        for (auto b : q.kept_basis) {
            data.labels.push_back(a->label(b));
            data.source.push_back(new_vertex[a->source(b)]);
            data.target.push_back(new_vertex[a->target(b)]);
        }
        data.products.resize(qd * qd);
        for (size_t i = 0; i < qd; ++i)
            for (size_t j = 0; j < qd; ++j) {
                auto prod = a->multiply(a->basis_vector(q.kept_basis[i]), a->basis_vector(q.kept_basis[j]));
                auto coords = q.projection.apply(prod);
                for (size_t k = 0; k < qd; ++k)
                    if (! f.is_zero(coords[k]))
                        data.products[i * qd + j].push_back({k, coords[k]});
            }
        if (a->paths()) {
            PathData p = *a->paths();
            p.words.clear();
            for (auto b : q.kept_basis)
                p.words.push_back(a->paths()->words[b]);
            data.paths = std::move(p);
        }
        q.quotient = Algebra<F>::create(std::move(data));
        return q;
    }

    template <Field F>
    auto to_json(const Algebra<F> & a) -> nlohmann::json
    {
        using nlohmann::json;
        const auto & f = a.field();
        json j;
        j["field"] = f.spec().to_string();
        j["vertices"] = a.vertex_names();
        j["basis"] = a.labels();
        json order = json::array();
        for (auto v : a.order())
            order.push_back(a.vertex_name(v));
        j["order"] = order;
        json sources = json::array(), targets = json::array(), idem = json::array();
        for (size_t i = 0; i < a.dim(); ++i) {
            sources.push_back(a.source(i));
            targets.push_back(a.target(i));
        }
        for (size_t v = 0; v < a.vertex_count(); ++v)
            idem.push_back(a.idempotent(v));
        j["source"] = sources;
        j["target"] = targets;
        j["idempotents"] = idem;
        json products = json::array();
        for (size_t i = 0; i < a.dim(); ++i)
            for (size_t k = 0; k < a.dim(); ++k)
                for (const auto & t : a.product(i, k))
                    products.push_back(json::array({i, k, t.index, f.to_string(t.coeff)}));
        j["products"] = products;
        return j;
    }

    template <Field F>
    auto algebra_from_json(const F & field, const nlohmann::json & j) -> typename Algebra<F>::Ptr
    {
        typename Algebra<F>::Data data;
        data.field = field;
        data.vertex_names = j.at("vertices").get<vector<string>>();
        data.labels = j.at("basis").get<vector<string>>();
        data.source = j.at("source").get<vector<size_t>>();
        data.target = j.at("target").get<vector<size_t>>();
        data.idempotents = j.at("idempotents").get<vector<size_t>>();
        for (const auto & name : j.at("order")) {
            auto it = std::find(data.vertex_names.begin(), data.vertex_names.end(), name.get<string>());
            data.order.push_back(it - data.vertex_names.begin());
        }
        auto d = data.labels.size();
        data.products.resize(d * d);
        for (const auto & p : j.at("products")) {
            auto i = p.at(0).get<size_t>(), k = p.at(1).get<size_t>(), idx = p.at(2).get<size_t>();
            if (i >= d || k >= d || idx >= d)
                throw InputError("product index out of range");
            data.products[i * d + k].push_back({idx, field.parse(p.at(3).get<string>())});
        }
        return Algebra<F>::create(std::move(data));
    }

#define STRATA_INSTANTIATE_ALGEBRA(F)                                                                               \
    template class Algebra<F>;                                                                                      \
    template auto validate(const Algebra<F> &) -> vector<string>;                                                   \
    template auto quotient_by_idempotent_ideal<F>(const Algebra<F>::Ptr &, size_t) -> IdempotentQuotient<F>;         \
    template auto to_json(const Algebra<F> &) -> nlohmann::json;                                                    \
    template auto algebra_from_json(const F &, const nlohmann::json &) -> Algebra<F>::Ptr;

    STRATA_INSTANTIATE_ALGEBRA(PrimeField)
    STRATA_INSTANTIATE_ALGEBRA(RationalField)
}
