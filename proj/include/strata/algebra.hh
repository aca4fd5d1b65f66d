#pragma once

#include <strata/matrix.hh>

#include <json.hpp>

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace strata
{
    /// Path data carried by algebras that come from a quiver: each basis
    /// element is a path, written function-style (rightmost arrow acts first).
    struct PathData
    {
        std::vector<std::string> arrow_names;
        std::vector<std::size_t> arrow_source, arrow_target;
        std::vector<std::vector<std::size_t>> words;
    };

    /// A finite-dimensional algebra given by structure constants in a basis
    /// adapted to a complete set of primitive orthogonal idempotents: every
    /// basis element b satisfies b = e_target b e_source, and each e_lambda is
    /// itself a basis element.
    template <Field F>
    class Algebra : public std::enable_shared_from_this<Algebra<F>>
    {
    public:
        using Element = typename F::Element;
        using Ptr = std::shared_ptr<const Algebra>;

        struct Term
        {
            std::size_t index;
            Element coeff;

            auto operator==(const Term &) const -> bool = default;
        };

        struct Data
        {
            F field;
            std::vector<std::string> vertex_names;
            std::vector<std::string> labels;
            std::vector<std::size_t> source, target;
            std::vector<std::size_t> idempotents;
            // products[i * dim + j] = b_i b_j as sparse terms
            std::vector<std::vector<Term>> products;
            // vertex indices, smallest first
            std::vector<std::size_t> order;
            std::optional<PathData> paths;
        };

        [[nodiscard]] static auto create(Data data) -> Ptr;

        [[nodiscard]] auto field() const -> const F & { return _d.field; }
        [[nodiscard]] auto dim() const -> std::size_t { return _d.labels.size(); }
        [[nodiscard]] auto vertex_count() const -> std::size_t { return _d.vertex_names.size(); }
        [[nodiscard]] auto vertex_name(std::size_t v) const -> const std::string & { return _d.vertex_names[v]; }
        [[nodiscard]] auto vertex_names() const -> const std::vector<std::string> & { return _d.vertex_names; }
        [[nodiscard]] auto label(std::size_t i) const -> const std::string & { return _d.labels[i]; }
        [[nodiscard]] auto labels() const -> const std::vector<std::string> & { return _d.labels; }
        [[nodiscard]] auto source(std::size_t i) const -> std::size_t { return _d.source[i]; }
        [[nodiscard]] auto target(std::size_t i) const -> std::size_t { return _d.target[i]; }
        [[nodiscard]] auto idempotent(std::size_t v) const -> std::size_t { return _d.idempotents[v]; }
        [[nodiscard]] auto order() const -> const std::vector<std::size_t> & { return _d.order; }
        [[nodiscard]] auto rank(std::size_t v) const -> std::size_t { return _rank[v]; }
        [[nodiscard]] auto paths() const -> const std::optional<PathData> & { return _d.paths; }
        [[nodiscard]] auto data() const -> const Data & { return _d; }

        [[nodiscard]] auto product(std::size_t i, std::size_t j) const -> const std::vector<Term> & { return _d.products[i * dim() + j]; }
        [[nodiscard]] auto multiply(const Vector<F> & a, const Vector<F> & b) const -> Vector<F>;
        [[nodiscard]] auto basis_vector(std::size_t i) const -> Vector<F>;
        [[nodiscard]] auto unit() const -> Vector<F>;

        /// Left multiplication by b_i on A; column j holds b_i b_j.
        [[nodiscard]] auto left_matrix(std::size_t i) const -> const Matrix<F> &;

        /// Basis indices of e_mu A e_lambda.
        [[nodiscard]] auto block(std::size_t mu, std::size_t lambda) const -> std::vector<std::size_t>;

        /// Homogeneous basis of the Jacobson radical. Throws FieldTooSmall
        /// when p <= dim.
        [[nodiscard]] auto radical() const -> const std::vector<Vector<F>> &;

        /// A homogeneous complement of rad^2 in rad; together with the
        /// idempotents these generate the algebra.
        [[nodiscard]] auto generators() const -> const std::vector<Vector<F>> &;
        [[nodiscard]] auto generator_source(std::size_t k) const -> std::size_t;
        [[nodiscard]] auto generator_target(std::size_t k) const -> std::size_t;

        /// The opposite algebra, built once; opposite of the opposite is this object.
        [[nodiscard]] auto opposite() const -> Ptr;

        /// The same algebra with another order on the vertices.
        [[nodiscard]] auto with_order(std::vector<std::size_t> order) const -> Ptr;

        /// Structural equality (field, labels, products, idempotents, order).
        [[nodiscard]] auto same_as(const Algebra & other) const -> bool;

        struct Private;
        Algebra(Private, Data data);

    private:
        auto compute_radical() const -> void;

        Data _d;
        std::vector<std::size_t> _rank;
        mutable std::once_flag _left_once, _radical_once, _op_once;
        mutable std::vector<Matrix<F>> _left;
        mutable std::vector<Vector<F>> _radical, _generators;
        mutable std::vector<std::size_t> _gen_source, _gen_target;
        mutable Ptr _op;
        mutable std::weak_ptr<const Algebra> _op_back;
    };

    /// Problems found by validate; empty means the algebra is valid.
    template <Field F>
    [[nodiscard]] auto validate(const Algebra<F> & a) -> std::vector<std::string>;

    template <Field F>
    struct IdempotentQuotient
    {
        typename Algebra<F>::Ptr parent, quotient;
        std::size_t cut;
        // quotient.dim x parent.dim
        Matrix<F> projection;
        // parent vertex of each quotient vertex
        std::vector<std::size_t> retained;
        // parent basis index of each quotient basis element
        std::vector<std::size_t> kept_basis;
    };

    /// A / A e_cut A, keeping the remaining vertices in their order.
    template <Field F>
    [[nodiscard]] auto quotient_by_idempotent_ideal(const typename Algebra<F>::Ptr & a, std::size_t cut) -> IdempotentQuotient<F>;

    template <Field F>
    [[nodiscard]] auto to_json(const Algebra<F> & a) -> nlohmann::json;

    template <Field F>
    [[nodiscard]] auto algebra_from_json(const F & field, const nlohmann::json & j) -> typename Algebra<F>::Ptr;

    /// Reverses the '*'-separated factors of a path label.
    [[nodiscard]] auto reverse_label(const std::string & label) -> std::string;
}
