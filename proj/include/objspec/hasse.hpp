#pragma once

#include "objspec/embed.hpp"
#include "objspec/objective.hpp"
#include "objspec/separations.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace objspec {

/// One cell of the expressivity relation with its justification chain.
struct RelationCell {
    bool expresses = false;
    std::vector<std::string> refs; ///< proposition identifiers, outermost first
};

/**
 * The full 17x17 relation "row can express column", together with reference
 * chains: embedding-edge and equivalence identifiers on green cells, a
 * fixture-backed impossibility plus connecting chains on red ones.
 */
struct RelationTable {
    std::vector<std::vector<RelationCell>> cells; ///< [row][column]

    const RelationCell& at(Formalism row, Formalism col) const {
        return cells[static_cast<int>(row)][static_cast<int>(col)];
    }
};

const RelationTable& relation_table();

/// Equivalence classes of formalisms with the covering edges between them.
struct HasseGraph {
    std::vector<std::vector<Formalism>> classes;      ///< each sorted by table order
    std::vector<std::pair<int, int>> edges;           ///< (upper class, lower class)

    int class_of(Formalism f) const;
};

/// Collapses mutual expressibility and takes the transitive reduction.
HasseGraph derive_hasse(const RelationTable& table);

/// Deterministic DOT rendering: one node per class, arrows from the more
/// expressive class to the covered one.
std::string emit_dot(const HasseGraph& graph);

struct EdgeCheckResult {
    EmbedEdge edge;
    int reps = 0;
    int failures = 0;
    double max_error = 0.0;
};

/// J-equality / ordering-identity property for one constructive edge.
EdgeCheckResult check_embedding_edge(const EmbedEdge& edge, int reps, std::uint64_t seed);

struct EquivSuiteResult {
    std::string name;
    int reps = 0;
    int failures = 0;
    std::string detail;
};

/// Delta-basis, well-definedness and lottery-prefix equivalence properties.
EquivSuiteResult run_equiv_suite(const std::string& name, int reps, std::uint64_t seed);

struct VerificationReport {
    struct CellEntry {
        std::string row, col;
        bool expresses = false;
        std::vector<std::string> refs;
        bool checkable = false;      ///< false = carries an analytic-only reference
        bool grid_certified = false; ///< impossibility checked on the discount grid only
        bool pass = false;
    };
    std::vector<CellEntry> cells;
    std::vector<SeparationReport> fixture_reports;
    std::vector<EdgeCheckResult> edge_results;
    std::vector<EquivSuiteResult> equiv_results;
    bool table_consistent = false;
    bool dot_stable = false;
    int failures = 0;

    nlohmann::json to_json() const;
};

/**
 * Runs every mechanically checkable justification: all fixtures, all
 * embedding edges, the equivalence suites, table consistency and DOT
 * stability; aggregates deterministically by name.
 */
VerificationReport verify_all();

} // namespace objspec
