#pragma once

#include <strata/algebra.hh>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace strata
{
    struct Arrow
    {
        std::string name;
        std::size_t source, target;
    };

    struct RelationTerm
    {
        std::string coeff;
        // arrow indices in written order; the last one acts first
        std::vector<std::size_t> word;
    };

    struct QuiverPresentation
    {
        FieldSpec field;
        std::size_t vertex_count = 0;
        std::vector<Arrow> arrows;
        std::vector<std::vector<RelationTerm>> relations;
        std::vector<std::size_t> order;
        // arrow index pairs, unverified
        std::optional<std::vector<std::pair<std::size_t, std::size_t>>> duality;
    };

    /// Parses the line-oriented quiver format. Throws ParseError with the line number.
    [[nodiscard]] auto parse_quiver(const std::string & text) -> QuiverPresentation;
    [[nodiscard]] auto parse_quiver_file(const std::string & path) -> QuiverPresentation;

    /// Source and target of a composable word, or nullopt.
    [[nodiscard]] auto word_endpoints(const QuiverPresentation & q, const std::vector<std::size_t> & word) -> std::optional<std::pair<std::size_t, std::size_t>>;

    /// Builds kQ/I with a basis of path normal forms. Throws NonAdmissible or
    /// NotFiniteDimensional. degree_cap of 0 means 2 * arrows * vertices.
    template <Field F>
    [[nodiscard]] auto build_algebra(const QuiverPresentation & q, const F & field, std::size_t degree_cap = 0) -> typename Algebra<F>::Ptr;
}
