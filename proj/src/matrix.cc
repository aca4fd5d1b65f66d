#include <strata/errors.hh>
#include <strata/matrix.hh>

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <utility>

using std::optional;
using std::size_t;
using std::uint64_t;
using std::vector;

namespace strata
{
    template <Field F>
    Matrix<F>::Matrix(F field, size_t rows, size_t cols) :
        _field(std::move(field)),
        _rows(rows),
        _cols(cols),
        _data(rows * cols, _field.zero())
    {
    }

    template <Field F>
    auto Matrix<F>::identity(F field, size_t n) -> Matrix
    {
        Matrix m(field, n, n);
        for (size_t i = 0; i < n; ++i)
            m(i, i) = field.one();
        return m;
    }

    template <Field F>
    auto Matrix<F>::from_ints(F field, std::initializer_list<std::initializer_list<std::int64_t>> rows) -> Matrix
    {
        size_t nr = rows.size(), nc = nr ? rows.begin()->size() : 0;
        Matrix m(field, nr, nc);
        size_t r = 0;
        for (auto & row : rows) {
            if (row.size() != nc)
                throw std::invalid_argument("ragged matrix literal");
            size_t c = 0;
            for (auto v : row)
                m(r, c++) = field.from_int(v);
            ++r;
        }
        return m;
    }

    template <Field F>
    auto Matrix<F>::from_columns(F field, size_t rows, const vector<Vector<F>> & columns) -> Matrix
    {
        Matrix m(field, rows, columns.size());
        for (size_t c = 0; c < columns.size(); ++c)
            m.set_column(c, columns[c]);
        return m;
    }

    template <Field F>
    auto Matrix<F>::from_rows(F field, size_t cols, const vector<Vector<F>> & rows) -> Matrix
    {
        Matrix m(field, rows.size(), cols);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols)
                throw std::invalid_argument("row length mismatch");
            std::copy(rows[r].begin(), rows[r].end(), m._data.begin() + r * cols);
        }
        return m;
    }

    template <Field F>
    auto Matrix<F>::row(size_t r) const -> Vector<F>
    {
        return Vector<F>(_data.begin() + r * _cols, _data.begin() + (r + 1) * _cols);
    }

    template <Field F>
    auto Matrix<F>::column(size_t c) const -> Vector<F>
    {
        Vector<F> v;
        v.reserve(_rows);
        for (size_t r = 0; r < _rows; ++r)
            v.push_back((*this)(r, c));
        return v;
    }

    template <Field F>
    auto Matrix<F>::set_column(size_t c, const Vector<F> & v) -> void
    {
        if (v.size() != _rows)
            throw std::invalid_argument("column length mismatch");
        for (size_t r = 0; r < _rows; ++r)
            (*this)(r, c) = v[r];
    }

    template <Field F>
    auto Matrix<F>::operator*(const Matrix & other) const -> Matrix
    {
        if (_cols != other._rows)
            throw std::invalid_argument("matrix product shape mismatch");
        Matrix out(_field, _rows, other._cols);
        for (size_t i = 0; i < _rows; ++i)
            for (size_t k = 0; k < _cols; ++k) {
                const auto & a = (*this)(i, k);
                if (_field.is_zero(a))
                    continue;
                for (size_t j = 0; j < other._cols; ++j) {
                    const auto & b = other(k, j);
                    if (! _field.is_zero(b))
                        out(i, j) = _field.add(out(i, j), _field.mul(a, b));
                }
            }
        return out;
    }

    template <Field F>
    auto Matrix<F>::operator+(const Matrix & other) const -> Matrix
    {
        if (_rows != other._rows || _cols != other._cols)
            throw std::invalid_argument("matrix sum shape mismatch");
        Matrix out(*this);
        for (size_t i = 0; i < _data.size(); ++i)
            out._data[i] = _field.add(_data[i], other._data[i]);
        return out;
    }

    template <Field F>
    auto Matrix<F>::operator-(const Matrix & other) const -> Matrix
    {
        if (_rows != other._rows || _cols != other._cols)
            throw std::invalid_argument("matrix difference shape mismatch");
        Matrix out(*this);
        for (size_t i = 0; i < _data.size(); ++i)
            out._data[i] = _field.sub(_data[i], other._data[i]);
        return out;
    }

    template <Field F>
    auto Matrix<F>::scaled(const Element & s) const -> Matrix
    {
        Matrix out(*this);
        for (auto & e : out._data)
            e = _field.mul(e, s);
        return out;
    }

    template <Field F>
    auto Matrix<F>::add_scaled(const Matrix & other, const Element & s) -> void
    {
        if (_rows != other._rows || _cols != other._cols)
            throw std::invalid_argument("matrix sum shape mismatch");
        if (_field.is_zero(s))
            return;
        for (size_t i = 0; i < _data.size(); ++i)
            if (! _field.is_zero(other._data[i]))
                _data[i] = _field.add(_data[i], _field.mul(other._data[i], s));
    }

    template <Field F>
    auto Matrix<F>::apply(const Vector<F> & v) const -> Vector<F>
    {
        if (v.size() != _cols)
            throw std::invalid_argument("matrix-vector shape mismatch");
        Vector<F> out(_rows, _field.zero());
        for (size_t k = 0; k < _cols; ++k) {
            if (_field.is_zero(v[k]))
                continue;
            for (size_t i = 0; i < _rows; ++i) {
                const auto & a = (*this)(i, k);
                if (! _field.is_zero(a))
                    out[i] = _field.add(out[i], _field.mul(a, v[k]));
            }
        }
        return out;
    }

    template <Field F>
    auto Matrix<F>::transposed() const -> Matrix
    {
        Matrix out(_field, _cols, _rows);
        for (size_t i = 0; i < _rows; ++i)
            for (size_t j = 0; j < _cols; ++j)
                out(j, i) = (*this)(i, j);
        return out;
    }

    template <Field F>
    auto Matrix<F>::block(size_t r0, size_t c0, size_t nr, size_t nc) const -> Matrix
    {
        if (r0 + nr > _rows || c0 + nc > _cols)
            throw std::out_of_range("matrix block out of range");
        Matrix out(_field, nr, nc);
        for (size_t i = 0; i < nr; ++i)
            for (size_t j = 0; j < nc; ++j)
                out(i, j) = (*this)(r0 + i, c0 + j);
        return out;
    }

    template <Field F>
    auto Matrix<F>::set_block(size_t r0, size_t c0, const Matrix & m) -> void
    {
        if (r0 + m._rows > _rows || c0 + m._cols > _cols)
            throw std::out_of_range("matrix block out of range");
        for (size_t i = 0; i < m._rows; ++i)
            for (size_t j = 0; j < m._cols; ++j)
                (*this)(r0 + i, c0 + j) = m(i, j);
    }

    template <Field F>
    auto Matrix<F>::select_columns(const vector<size_t> & cols) const -> Matrix
    {
        Matrix out(_field, _rows, cols.size());
        for (size_t i = 0; i < _rows; ++i)
            for (size_t j = 0; j < cols.size(); ++j)
                out(i, j) = (*this)(i, cols[j]);
        return out;
    }

    template <Field F>
    auto Matrix<F>::select_rows(const vector<size_t> & rows) const -> Matrix
    {
        Matrix out(_field, rows.size(), _cols);
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < _cols; ++j)
                out(i, j) = (*this)(rows[i], j);
        return out;
    }

    template <Field F>
    auto Matrix<F>::is_zero() const -> bool
    {
        return std::all_of(_data.begin(), _data.end(), [&](const Element & e) { return _field.is_zero(e); });
    }

    template <Field F>
    auto Matrix<F>::is_identity() const -> bool
    {
        if (_rows != _cols)
            return false;
        for (size_t i = 0; i < _rows; ++i)
            for (size_t j = 0; j < _cols; ++j)
                if (! _field.equal((*this)(i, j), i == j ? _field.one() : _field.zero()))
                    return false;
        return true;
    }

    template <Field F>
    auto Matrix<F>::nonzero_count() const -> size_t
    {
        return std::count_if(_data.begin(), _data.end(), [&](const Element & e) { return ! _field.is_zero(e); });
    }

    template <Field F>
    auto Matrix<F>::operator==(const Matrix & other) const -> bool
    {
        if (_rows != other._rows || _cols != other._cols)
            return false;
        for (size_t i = 0; i < _data.size(); ++i)
            if (! _field.equal(_data[i], other._data[i]))
                return false;
        return true;
    }

    template <Field F>
    auto Matrix<F>::hstack(const Matrix & a, const Matrix & b) -> Matrix
    {
        if (a._rows != b._rows)
            throw std::invalid_argument("hstack row mismatch");
        Matrix out(a._field, a._rows, a._cols + b._cols);
        out.set_block(0, 0, a);
        out.set_block(0, a._cols, b);
        return out;
    }

    template <Field F>
    auto Matrix<F>::vstack(const Matrix & a, const Matrix & b) -> Matrix
    {
        if (a._cols != b._cols)
            throw std::invalid_argument("vstack column mismatch");
        Matrix out(a._field, a._rows + b._rows, a._cols);
        out.set_block(0, 0, a);
        out.set_block(a._rows, 0, b);
        return out;
    }

    template <Field F>
    auto rref(const Matrix<F> & m) -> RrefResult<F>
    {
        const auto & f = m.field();
        Matrix<F> a = m;
        vector<size_t> pivots;
        size_t r = 0;
        for (size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
            size_t p = r;
            while (p < a.rows() && f.is_zero(a(p, c)))
                ++p;
            if (p == a.rows())
                continue;
            if (p != r)
                for (size_t j = c; j < a.cols(); ++j)
                    std::swap(a(p, j), a(r, j));
            auto inv = f.inv(a(r, c));
            for (size_t j = c; j < a.cols(); ++j)
                a(r, j) = f.mul(a(r, j), inv);
            for (size_t i = 0; i < a.rows(); ++i) {
                if (i == r || f.is_zero(a(i, c)))
                    continue;
                auto factor = a(i, c);
                for (size_t j = c; j < a.cols(); ++j)
                    if (! f.is_zero(a(r, j)))
                        a(i, j) = f.sub(a(i, j), f.mul(factor, a(r, j)));
            }
            pivots.push_back(c);
            ++r;
        }
        return RrefResult<F>{r, std::move(a), std::move(pivots)};
    }

    template <Field F>
    auto rank(const Matrix<F> & m) -> size_t
    {
        // row-by-row insertion avoids copying the full reduced matrix
        Subspace<F> s(m.field(), m.cols());
        for (size_t i = 0; i < m.rows(); ++i)
            s.add(m.row(i));
        return s.dim();
    }

    template <Field F>
    auto kernel_basis(const Matrix<F> & m) -> vector<Vector<F>>
    {
        const auto & f = m.field();
        auto r = rref(m);
        vector<bool> is_pivot(m.cols(), false);
        for (auto p : r.pivot_cols)
            is_pivot[p] = true;
        vector<Vector<F>> out;
        for (size_t free = 0; free < m.cols(); ++free) {
            if (is_pivot[free])
                continue;
            Vector<F> v(m.cols(), f.zero());
            v[free] = f.one();
            for (size_t i = 0; i < r.rank; ++i)
                v[r.pivot_cols[i]] = f.neg(r.reduced(i, free));
            out.push_back(std::move(v));
        }
        return out;
    }

    template <Field F>
    auto solve(const Matrix<F> & a, const Matrix<F> & b) -> optional<Matrix<F>>
    {
        if (a.rows() != b.rows())
            throw std::invalid_argument("solve: row counts differ");
        const auto & f = a.field();
        auto r = rref(Matrix<F>::hstack(a, b));
        Matrix<F> x(f, a.cols(), b.cols());
        for (size_t i = 0; i < r.rank; ++i) {
            auto p = r.pivot_cols[i];
            if (p >= a.cols())
                return std::nullopt;
            for (size_t j = 0; j < b.cols(); ++j)
                x(p, j) = r.reduced(i, a.cols() + j);
        }
        return x;
    }

    template <Field F>
    auto inverse(const Matrix<F> & m) -> optional<Matrix<F>>
    {
        if (m.rows() != m.cols())
            return std::nullopt;
        auto r = rref(Matrix<F>::hstack(m, Matrix<F>::identity(m.field(), m.rows())));
        if (r.rank < m.rows() || (m.rows() > 0 && r.pivot_cols[m.rows() - 1] >= m.cols()))
            return std::nullopt;
        return r.reduced.block(0, m.cols(), m.rows(), m.cols());
    }

    template <Field F>
    auto characteristic_polynomial(const Matrix<F> & m) -> Vector<F>
    {
        if (m.rows() != m.cols())
            throw std::invalid_argument("characteristic polynomial of a non-square matrix");
        const auto & f = m.field();
        const size_t n = m.rows();
        Matrix<F> h = m;

        // similarity transform to upper Hessenberg form
        for (size_t col = 0; col + 2 < n; ++col) {
            size_t piv = col + 1;
            while (piv < n && f.is_zero(h(piv, col)))
                ++piv;
            if (piv == n)
                continue;
            if (piv != col + 1) {
                for (size_t j = 0; j < n; ++j)
                    std::swap(h(piv, j), h(col + 1, j));
                for (size_t i = 0; i < n; ++i)
                    std::swap(h(i, piv), h(i, col + 1));
            }
            auto inv = f.inv(h(col + 1, col));
            for (size_t i = col + 2; i < n; ++i) {
                if (f.is_zero(h(i, col)))
                    continue;
                auto u = f.mul(h(i, col), inv);
                for (size_t j = 0; j < n; ++j)
                    h(i, j) = f.sub(h(i, j), f.mul(u, h(col + 1, j)));
                for (size_t j = 0; j < n; ++j)
                    h(j, col + 1) = f.add(h(j, col + 1), f.mul(u, h(j, i)));
            }
        }

        vector<Vector<F>> p(n + 1);
        p[0] = Vector<F>{f.one()};
        for (size_t k = 1; k <= n; ++k) {
            // (x - h[k-1][k-1]) p[k-1]
            Vector<F> next(k + 1, f.zero());
            for (size_t d = 0; d < k; ++d) {
                next[d + 1] = f.add(next[d + 1], p[k - 1][d]);
                next[d] = f.sub(next[d], f.mul(h(k - 1, k - 1), p[k - 1][d]));
            }
            auto t = f.one();
            for (size_t i = 1; i < k; ++i) {
                t = f.mul(t, h(k - i, k - i - 1));
                auto c = f.mul(h(k - i - 1, k - 1), t);
                if (f.is_zero(c))
                    continue;
                for (size_t d = 0; d < p[k - i - 1].size(); ++d)
                    next[d] = f.sub(next[d], f.mul(c, p[k - i - 1][d]));
            }
            p[k] = std::move(next);
        }
        return p[n];
    }

    template <Field F>
    auto is_zero_vector(const F & field, const Vector<F> & v) -> bool
    {
        return std::all_of(v.begin(), v.end(), [&](const auto & e) { return field.is_zero(e); });
    }

    template <Field F>
    Subspace<F>::Subspace(F field, size_t ambient) :
        _field(std::move(field)),
        _ambient(ambient)
    {
    }

    template <Field F>
    auto Subspace<F>::reduce(Vector<F> v) const -> Vector<F>
    {
        if (v.size() != _ambient)
            throw std::invalid_argument("subspace: vector length mismatch");
        for (size_t i = 0; i < _basis.size(); ++i) {
            auto c = v[_pivots[i]];
            if (_field.is_zero(c))
                continue;
            const auto & b = _basis[i];
            for (size_t j = _pivots[i]; j < _ambient; ++j)
                if (! _field.is_zero(b[j]))
                    v[j] = _field.sub(v[j], _field.mul(c, b[j]));
        }
        return v;
    }

    template <Field F>
    auto Subspace<F>::contains(const Vector<F> & v) const -> bool
    {
        return is_zero_vector(_field, reduce(v));
    }

    template <Field F>
    auto Subspace<F>::add(const Vector<F> & v) -> bool
    {
        auto r = reduce(v);
        size_t p = 0;
        while (p < _ambient && _field.is_zero(r[p]))
            ++p;
        if (p == _ambient)
            return false;
        auto inv = _field.inv(r[p]);
        for (size_t j = p; j < _ambient; ++j)
            r[j] = _field.mul(r[j], inv);
        for (auto & b : _basis) {
            auto c = b[p];
            if (_field.is_zero(c))
                continue;
            for (size_t j = p; j < _ambient; ++j)
                if (! _field.is_zero(r[j]))
                    b[j] = _field.sub(b[j], _field.mul(c, r[j]));
        }
        auto pos = std::lower_bound(_pivots.begin(), _pivots.end(), p) - _pivots.begin();
        _pivots.insert(_pivots.begin() + pos, p);
        _basis.insert(_basis.begin() + pos, std::move(r));
        return true;
    }

    template <Field F>
    auto Subspace<F>::coordinates(const Vector<F> & v) const -> optional<Vector<F>>
    {
        if (! contains(v))
            return std::nullopt;
        Vector<F> c;
        c.reserve(_basis.size());
        for (auto p : _pivots)
            c.push_back(v[p]);
        return c;
    }

    template <Field F>
    auto Subspace<F>::non_pivots() const -> vector<size_t>
    {
        vector<size_t> out;
        size_t k = 0;
        for (size_t j = 0; j < _ambient; ++j) {
            if (k < _pivots.size() && _pivots[k] == j)
                ++k;
            else
                out.push_back(j);
        }
        return out;
    }

    template <Field F>
    auto Subspace<F>::basis_matrix() const -> Matrix<F>
    {
        return Matrix<F>::from_columns(_field, _ambient, _basis);
    }

    namespace
    {
        using PrimePoly = Vector<PrimeField>;

        auto trim(PrimePoly & a) -> void
        {
            while (! a.empty() && a.back() == 0)
                a.pop_back();
        }

        auto poly_mod(const PrimeField & f, PrimePoly a, const PrimePoly & m) -> PrimePoly
        {
            trim(a);
            auto lead_inv = f.inv(m.back());
            while (a.size() >= m.size()) {
                auto c = f.mul(a.back(), lead_inv);
                auto shift = a.size() - m.size();
                for (size_t i = 0; i < m.size(); ++i)
                    a[shift + i] = f.sub(a[shift + i], f.mul(c, m[i]));
                trim(a);
            }
            return a;
        }

        auto poly_mulmod(const PrimeField & f, const PrimePoly & a, const PrimePoly & b, const PrimePoly & m) -> PrimePoly
        {
            if (a.empty() || b.empty())
                return {};
            PrimePoly out(a.size() + b.size() - 1, 0);
            for (size_t i = 0; i < a.size(); ++i)
                for (size_t j = 0; j < b.size(); ++j)
                    out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
            return poly_mod(f, std::move(out), m);
        }

        auto poly_powmod(const PrimeField & f, PrimePoly base, uint64_t e, const PrimePoly & m) -> PrimePoly
        {
            PrimePoly result = poly_mod(f, PrimePoly{1}, m);
            base = poly_mod(f, std::move(base), m);
            while (e > 0) {
                if (e & 1)
                    result = poly_mulmod(f, result, base, m);
                base = poly_mulmod(f, base, base, m);
                e >>= 1;
            }
            return result;
        }

        auto poly_gcd(const PrimeField & f, PrimePoly a, PrimePoly b) -> PrimePoly
        {
            trim(a);
            trim(b);
            while (! b.empty()) {
                auto r = poly_mod(f, a, b);
                a = std::move(b);
                b = std::move(r);
            }
            if (! a.empty()) {
                auto inv = f.inv(a.back());
                for (auto & c : a)
                    c = f.mul(c, inv);
            }
            return a;
        }

        auto poly_div_exact(const PrimeField & f, PrimePoly a, const PrimePoly & b) -> PrimePoly
        {
            trim(a);
            PrimePoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
            auto lead_inv = f.inv(b.back());
            while (a.size() >= b.size() && ! a.empty()) {
                auto c = f.mul(a.back(), lead_inv);
                auto shift = a.size() - b.size();
                q[shift] = c;
                for (size_t i = 0; i < b.size(); ++i)
                    a[shift + i] = f.sub(a[shift + i], f.mul(c, b[i]));
                trim(a);
            }
            return q;
        }

        // g is monic, squarefree and splits into distinct linear factors
        auto split_roots(const PrimeField & f, const PrimePoly & g, Rng & rng, PrimePoly & out) -> void
        {
            if (g.size() <= 1)
                return;
            if (g.size() == 2) {
                out.push_back(f.neg(f.mul(g[0], f.inv(g[1]))));
                return;
            }
            auto p = f.characteristic();
            if (p == 2) {
                for (PrimeField::Element c = 0; c < 2; ++c) {
                    PrimeField::Element v = 0;
                    for (size_t i = g.size(); i-- > 0;)
                        v = f.add(f.mul(v, c), g[i]);
                    if (v == 0)
                        out.push_back(c);
                }
                return;
            }
            while (true) {
                auto a = f.from_random(rng.next());
                auto h = poly_powmod(f, PrimePoly{a, 1}, (uint64_t{p} - 1) / 2, g);
                if (h.empty())
                    h = PrimePoly{f.neg(1)};
                else
                    h[0] = f.sub(h[0], 1);
                auto d = poly_gcd(f, g, h);
                if (d.size() > 1 && d.size() < g.size()) {
                    split_roots(f, d, rng, out);
                    split_roots(f, poly_div_exact(f, g, d), rng, out);
                    return;
                }
            }
        }
    }

    auto field_roots(const PrimeField & f, const Vector<PrimeField> & poly, uint64_t seed) -> Vector<PrimeField>
    {
        PrimePoly a = poly;
        trim(a);
        if (a.size() <= 1)
            return {};
        auto inv = f.inv(a.back());
        for (auto & c : a)
            c = f.mul(c, inv);
        // gcd(a, x^p - x) collects the distinct linear factors
        auto xp = poly_powmod(f, PrimePoly{0, 1}, f.characteristic(), a);
        xp.resize(std::max<size_t>(xp.size(), 2), 0);
        xp[1] = f.sub(xp[1], 1);
        auto g = poly_gcd(f, a, xp);
        PrimePoly out;
        Rng rng(seed);
        split_roots(f, g, rng, out);
        std::sort(out.begin(), out.end());
        return out;
    }

    namespace
    {
        auto small_divisors(const mpz_class & n, vector<mpz_class> & out) -> bool
        {
            mpz_class m = abs(n);
            if (m > mpz_class{"1000000000000"})
                return false;
            auto v = m.get_ui();
            for (unsigned long d = 1; d * d <= v; ++d)
                if (v % d == 0) {
                    out.emplace_back(d);
                    if (d * d != v)
                        out.emplace_back(v / d);
                }
            return true;
        }
    }

    auto field_roots(const RationalField & f, const Vector<RationalField> & poly, uint64_t) -> Vector<RationalField>
    {
        Vector<RationalField> a = poly;
        while (! a.empty() && sgn(a.back()) == 0)
            a.pop_back();
        if (a.size() <= 1)
            return {};
        Vector<RationalField> out;
        // strip factors of x
        size_t low = 0;
        while (sgn(a[low]) == 0)
            ++low;
        if (low > 0) {
            out.push_back(f.zero());
            a.erase(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(low));
        }
        if (a.size() <= 1)
            return out;
        mpz_class denom_lcm = 1;
        for (auto & c : a)
            mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), c.get_den_mpz_t());
        vector<mpz_class> ints;
        for (auto & c : a)
            ints.push_back(mpz_class{c * denom_lcm});
        vector<mpz_class> num_div, den_div;
        if (! small_divisors(ints.front(), num_div) || ! small_divisors(ints.back(), den_div))
            return out;
        vector<mpq_class> candidates;
        for (auto & p : num_div)
            for (auto & q : den_div)
                for (int sign : {1, -1}) {
                    mpq_class c{p * sign, q};
                    c.canonicalize();
                    candidates.push_back(c);
                }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        for (auto & c : candidates) {
            mpq_class v = 0;
            for (size_t i = a.size(); i-- > 0;)
                v = v * c + a[i];
            if (sgn(v) == 0)
                out.push_back(c);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

#define STRATA_INSTANTIATE_MATRIX(F)                                                           \
    template class Matrix<F>;                                                                  \
    template class Subspace<F>;                                                                \
    template auto rref(const Matrix<F> &) -> RrefResult<F>;                                    \
    template auto rank(const Matrix<F> &) -> size_t;                                           \
    template auto kernel_basis(const Matrix<F> &) -> vector<Vector<F>>;                        \
    template auto solve(const Matrix<F> &, const Matrix<F> &) -> optional<Matrix<F>>;          \
    template auto inverse(const Matrix<F> &) -> optional<Matrix<F>>;                           \
    template auto characteristic_polynomial(const Matrix<F> &) -> Vector<F>;                   \
    template auto is_zero_vector(const F &, const Vector<F> &) -> bool;

    STRATA_INSTANTIATE_MATRIX(PrimeField)
    STRATA_INSTANTIATE_MATRIX(RationalField)
}
