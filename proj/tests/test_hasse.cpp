#include "objspec/hasse.hpp"

#include <doctest.h>

#include <set>

using namespace objspec;

TEST_CASE("the relation table has 289 justified cells") {
    const RelationTable& t = relation_table();
    REQUIRE(t.cells.size() == 17);
    int total = 0;
    for (const auto& row : t.cells) {
        REQUIRE(row.size() == 17);
        for (const RelationCell& cell : row) {
            total++;
            if (!cell.expresses) CHECK(!cell.refs.empty());
        }
    }
    CHECK(total == 289);
}

TEST_CASE("spot values of the relation match the recorded results") {
    const RelationTable& t = relation_table();
    CHECK(t.at(Formalism::RM, Formalism::MR).expresses);
    CHECK_FALSE(t.at(Formalism::MR, Formalism::LAR).expresses);
    CHECK_FALSE(t.at(Formalism::FTR, Formalism::RRL).expresses);
    CHECK(t.at(Formalism::OMORL, Formalism::RRL).expresses);
    CHECK(t.at(Formalism::GOMORL, Formalism::OMO).expresses);
    CHECK_FALSE(t.at(Formalism::FPR, Formalism::GOMORL).expresses);
    for (int x = 0; x < kFormalismCount; x++)
        CHECK(t.cells[x][x].expresses);
    for (int y = 0; y < kFormalismCount; y++)
        CHECK(t.at(Formalism::PO, static_cast<Formalism>(y)).expresses);
}

TEST_CASE("the derived diagram has the eleven known classes with PO on top") {
    const HasseGraph g = derive_hasse(relation_table());
    REQUIRE(g.classes.size() == 11);
    auto class_set = [&](Formalism f) {
        std::set<Formalism> out;
        for (Formalism member : g.classes[g.class_of(f)]) out.insert(member);
        return out;
    };
    CHECK(class_set(Formalism::INMR) ==
          std::set<Formalism>{Formalism::INMR, Formalism::IMORL, Formalism::FTR});
    CHECK(class_set(Formalism::OMORL) ==
          std::set<Formalism>{Formalism::OMORL, Formalism::FOMR, Formalism::FTLR});
    CHECK(class_set(Formalism::GOMORL) ==
          std::set<Formalism>{Formalism::GOMORL, Formalism::OMO, Formalism::TLO});
    CHECK(class_set(Formalism::PO) == std::set<Formalism>{Formalism::PO});
    // PO is the unique top: no incoming covering edge, and it reaches all
    const int po = g.class_of(Formalism::PO);
    for (const auto& [hi, lo] : g.edges) CHECK(lo != po);
    std::set<int> reachable{po};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& [hi, lo] : g.edges)
            if (reachable.count(hi) && !reachable.count(lo)) {
                reachable.insert(lo);
                grew = true;
            }
    }
    CHECK(reachable.size() == g.classes.size());
    CHECK(g.edges.size() == 13);
}

TEST_CASE("a transitivity violation is reported as table corruption") {
    RelationTable corrupted = relation_table();
    // RM expresses MR; deleting (FTR, MR) while keeping (FTR, RM) breaks closure
    corrupted.cells[static_cast<int>(Formalism::FTR)][static_cast<int>(Formalism::MR)]
        .expresses = false;
    CHECK_THROWS_AS(derive_hasse(corrupted), InconsistentTable);
}

TEST_CASE("dot output is valid, class-complete and byte-stable") {
    const HasseGraph g = derive_hasse(relation_table());
    const std::string dot1 = emit_dot(g);
    const std::string dot2 = emit_dot(derive_hasse(relation_table()));
    CHECK(dot1 == dot2);
    CHECK(dot1.rfind("digraph", 0) == 0);
    CHECK(dot1.find("}") != std::string::npos);
    int nodes = 0;
    for (std::size_t pos = dot1.find("[label="); pos != std::string::npos;
         pos = dot1.find("[label=", pos + 1))
        nodes++;
    CHECK(nodes == 11);
    CHECK(dot1.find("INMR = IMORL = FTR") != std::string::npos);
    CHECK(dot1.find("OMORL = FOMR = FTLR") != std::string::npos);
    CHECK(dot1.find("OMO = TLO = GOMORL") != std::string::npos);
}

TEST_CASE("verify_all is clean and resolves every reference") {
    const VerificationReport report = verify_all();
    CHECK(report.failures == 0);
    CHECK(report.table_consistent);
    CHECK(report.dot_stable);
    CHECK(report.cells.size() == 289);
    CHECK(report.fixture_reports.size() == 12);
    CHECK(report.edge_results.size() == 17);
    CHECK(report.equiv_results.size() == 3);
    // fixture reports arrive sorted for deterministic aggregation
    for (std::size_t k = 1; k < report.fixture_reports.size(); k++)
        CHECK(report.fixture_reports[k - 1].fixture < report.fixture_reports[k].fixture);
    int analytic = 0, grid = 0;
    for (const auto& cell : report.cells) {
        CHECK(cell.pass);
        if (!cell.checkable) {
            analytic++;
            bool cites_lex = false;
            for (const std::string& ref : cell.refs)
                if (ref == "lexicographic-unrepresentable") cites_lex = true;
            CHECK(cites_lex);
        }
        if (cell.grid_certified) {
            grid++;
            CHECK_FALSE(cell.expresses);
            bool cites_lp_prop = false;
            for (const std::string& ref : cell.refs)
                if (ref == "xor-parity" || ref == "cycle-average-coupling")
                    cites_lp_prop = true;
            CHECK(cites_lp_prop);
        }
    }
    CHECK(analytic == 13);
    CHECK(grid > 0);
    const nlohmann::json j = report.to_json();
    CHECK(j["failures"] == 0);
    CHECK(j["cells"].size() == 289);
}
