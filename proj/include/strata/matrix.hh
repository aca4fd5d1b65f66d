#pragma once

#include <strata/field.hh>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <vector>

namespace strata
{
    template <Field F>
    using Vector = std::vector<typename F::Element>;

    /// Dense row-major matrix over an exact field.
    template <Field F>
    class Matrix
    {
    public:
        using Element = typename F::Element;

        Matrix(F field, std::size_t rows, std::size_t cols);

        [[nodiscard]] static auto identity(F field, std::size_t n) -> Matrix;
        [[nodiscard]] static auto from_ints(F field, std::initializer_list<std::initializer_list<std::int64_t>> rows) -> Matrix;
        [[nodiscard]] static auto from_columns(F field, std::size_t rows, const std::vector<Vector<F>> & columns) -> Matrix;
        [[nodiscard]] static auto from_rows(F field, std::size_t cols, const std::vector<Vector<F>> & rows) -> Matrix;

        [[nodiscard]] auto field() const -> const F & { return _field; }
        [[nodiscard]] auto rows() const -> std::size_t { return _rows; }
        [[nodiscard]] auto cols() const -> std::size_t { return _cols; }

        [[nodiscard]] auto operator()(std::size_t r, std::size_t c) const -> const Element & { return _data[r * _cols + c]; }
        [[nodiscard]] auto operator()(std::size_t r, std::size_t c) -> Element & { return _data[r * _cols + c]; }

        [[nodiscard]] auto row(std::size_t r) const -> Vector<F>;
        [[nodiscard]] auto column(std::size_t c) const -> Vector<F>;
        auto set_column(std::size_t c, const Vector<F> & v) -> void;

        [[nodiscard]] auto operator*(const Matrix & other) const -> Matrix;
        [[nodiscard]] auto operator+(const Matrix & other) const -> Matrix;
        [[nodiscard]] auto operator-(const Matrix & other) const -> Matrix;
        [[nodiscard]] auto scaled(const Element & s) const -> Matrix;
        auto add_scaled(const Matrix & other, const Element & s) -> void;
        [[nodiscard]] auto apply(const Vector<F> & v) const -> Vector<F>;
        [[nodiscard]] auto transposed() const -> Matrix;

        [[nodiscard]] auto block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const -> Matrix;
        auto set_block(std::size_t r0, std::size_t c0, const Matrix & m) -> void;
        [[nodiscard]] auto select_columns(const std::vector<std::size_t> & cols) const -> Matrix;
        [[nodiscard]] auto select_rows(const std::vector<std::size_t> & rows) const -> Matrix;

        [[nodiscard]] auto is_zero() const -> bool;
        [[nodiscard]] auto is_identity() const -> bool;
        [[nodiscard]] auto nonzero_count() const -> std::size_t;
        [[nodiscard]] auto operator==(const Matrix & other) const -> bool;

        [[nodiscard]] static auto hstack(const Matrix & a, const Matrix & b) -> Matrix;
        [[nodiscard]] static auto vstack(const Matrix & a, const Matrix & b) -> Matrix;

    private:
        F _field;
        std::size_t _rows, _cols;
        std::vector<Element> _data;
    };

    template <Field F>
    struct RrefResult
    {
        std::size_t rank;
        Matrix<F> reduced;
        std::vector<std::size_t> pivot_cols;
    };

    /// Reduced row-echelon form with leftmost pivots.
    template <Field F>
    [[nodiscard]] auto rref(const Matrix<F> & m) -> RrefResult<F>;

    template <Field F>
    [[nodiscard]] auto rank(const Matrix<F> & m) -> std::size_t;

    /// Basis of the right null space, one vector per free column in increasing order.
    template <Field F>
    [[nodiscard]] auto kernel_basis(const Matrix<F> & m) -> std::vector<Vector<F>>;

    /// One solution x of a x = b (b may have several columns), or nullopt when inconsistent.
    template <Field F>
    [[nodiscard]] auto solve(const Matrix<F> & a, const Matrix<F> & b) -> std::optional<Matrix<F>>;

    template <Field F>
    [[nodiscard]] auto inverse(const Matrix<F> & m) -> std::optional<Matrix<F>>;

    /// Monic characteristic polynomial, coefficients from degree 0 upwards.
    template <Field F>
    [[nodiscard]] auto characteristic_polynomial(const Matrix<F> & m) -> Vector<F>;

    /// Distinct roots of a polynomial in the field itself.
    [[nodiscard]] auto field_roots(const PrimeField & f, const Vector<PrimeField> & poly, std::uint64_t seed) -> Vector<PrimeField>;
    [[nodiscard]] auto field_roots(const RationalField & f, const Vector<RationalField> & poly, std::uint64_t seed) -> Vector<RationalField>;

    template <Field F>
    [[nodiscard]] auto is_zero_vector(const F & field, const Vector<F> & v) -> bool;

    /// A subspace of F^n kept as a fully reduced row-echelon basis, so membership
    /// tests and coordinate extraction are cheap.
    template <Field F>
    class Subspace
    {
    public:
        Subspace(F field, std::size_t ambient);

        [[nodiscard]] auto ambient() const -> std::size_t { return _ambient; }
        [[nodiscard]] auto dim() const -> std::size_t { return _basis.size(); }
        [[nodiscard]] auto field() const -> const F & { return _field; }

        /// Adds v to the span; returns false if it was already contained.
        auto add(const Vector<F> & v) -> bool;

        /// Residual of v after elimination against the basis; zero iff v is in the span.
        [[nodiscard]] auto reduce(Vector<F> v) const -> Vector<F>;
        [[nodiscard]] auto contains(const Vector<F> & v) const -> bool;

        /// Coordinates with respect to basis(), or nullopt if v is outside the span.
        [[nodiscard]] auto coordinates(const Vector<F> & v) const -> std::optional<Vector<F>>;

        [[nodiscard]] auto basis() const -> const std::vector<Vector<F>> & { return _basis; }
        [[nodiscard]] auto pivots() const -> const std::vector<std::size_t> & { return _pivots; }
        [[nodiscard]] auto non_pivots() const -> std::vector<std::size_t>;

        /// Basis vectors as columns of an ambient x dim matrix.
        [[nodiscard]] auto basis_matrix() const -> Matrix<F>;

    private:
        F _field;
        std::size_t _ambient;
        std::vector<Vector<F>> _basis;
        std::vector<std::size_t> _pivots;
    };

    /// Seeded generator; mt19937_64 output is fixed by the standard, so runs
    /// are reproducible across platforms.
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) :
            _engine(seed)
        {
        }

        auto next() -> std::uint64_t { return _engine(); }
        auto below(std::uint64_t n) -> std::uint64_t { return n == 0 ? 0 : _engine() % n; }

    private:
        std::mt19937_64 _engine;
    };
}
