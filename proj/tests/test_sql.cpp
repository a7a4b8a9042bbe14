#include "doctest.h"

#include <sqlite3.h>

#include "dlite/rewrite.hpp"
#include "dlite/syntax.hpp"
#include "testutil.hpp"

using namespace dlite;

namespace {

// Load an ABox into an in-memory SQLite database with the fixed schema and
// execute a query, returning the result tuples.
struct SqlFixture {
    sqlite3* db = nullptr;

    explicit SqlFixture(const ABox& a) {
        REQUIRE(sqlite3_open(":memory:", &db) == SQLITE_OK);
        exec("create table ca(c text, obj text);");
        exec("create table nca(c text, obj text);");
        exec("create table ra(r text, s text, o text);");
        exec("create table nra(r text, s text, o text);");
        for (const auto& ca : a.concept_assertions)
            exec("insert into " + std::string(ca.positive ? "ca" : "nca") + " values('" +
                 ca.concept_name + "','" + ca.object + "');");
        for (const auto& ra : a.role_assertions)
            exec("insert into " + std::string(ra.positive ? "ra" : "nra") + " values('" +
                 ra.role_name + "','" + ra.subject + "','" + ra.object + "');");
    }
    ~SqlFixture() { sqlite3_close(db); }

    void exec(const std::string& sql) {
        char* err = nullptr;
        int rc = sqlite3_exec(db, sql.c_str(), nullptr, nullptr, &err);
        if (rc != SQLITE_OK) {
            std::string msg = err ? err : "unknown";
            sqlite3_free(err);
            FAIL("sqlite error: ", msg, " in ", sql);
        }
    }

    std::set<std::vector<std::string>> query(const std::string& sql) {
        std::set<std::vector<std::string>> out;
        sqlite3_stmt* stmt = nullptr;
        int rc = sqlite3_prepare_v2(db, sql.c_str(), -1, &stmt, nullptr);
        if (rc != SQLITE_OK) FAIL("sqlite prepare failed: ", sqlite3_errmsg(db), "\n", sql);
        while (sqlite3_step(stmt) == SQLITE_ROW) {
            std::vector<std::string> row;
            for (int i = 0; i < sqlite3_column_count(stmt); ++i) {
                const unsigned char* v = sqlite3_column_text(stmt, i);
                row.push_back(v ? reinterpret_cast<const char*>(v) : "");
            }
            out.insert(row);
        }
        sqlite3_finalize(stmt);
        return out;
    }
};

std::set<std::vector<std::string>> run_sql(const ABox& a, const FOQuery& f) {
    SqlFixture fx(a);
    auto rows = fx.query(emit_sql(f));
    if (f.free_vars.empty()) {
        // sentence: nonempty result means true; normalize to the eval_fo shape
        std::set<std::vector<std::string>> out;
        if (!rows.empty()) out.insert({});
        return out;
    }
    return rows;
}

} // namespace

TEST_CASE("emitted SQL matches eval_fo on simple queries") {
    auto abox = parse_kb("[tbox]\n[abox]\nP(a,b)\nA(a)\nA(c)\nnot B(c)\n").abox;
    auto s = build_abox_structure(abox);

    FOQuery q1;
    q1.free_vars = {"x"};
    q1.formula =
        FOFormula::exists("y", FOFormula::role_atom("P", FOTerm::var("x"), FOTerm::var("y")));
    CHECK(run_sql(abox, q1) == eval_fo(s, q1));

    FOQuery q2;
    q2.free_vars = {"x"};
    q2.formula = FOFormula::disj({FOFormula::concept_atom("A", FOTerm::var("x")),
                                  FOFormula::concept_atom("B", FOTerm::var("x"))});
    CHECK(run_sql(abox, q2) == eval_fo(s, q2));

    // Negated-relation atom and inequality.
    FOQuery q3;
    q3.free_vars = {"x"};
    q3.formula = FOFormula::conj(
        {FOFormula::concept_atom("B", FOTerm::var("x"), /*negated_rel=*/true),
         FOFormula::neq(FOTerm::var("x"), FOTerm::constant("a"))});
    CHECK(run_sql(abox, q3) == eval_fo(s, q3));

    // Ground sentence.
    FOQuery q4;
    q4.formula = FOFormula::exists(
        "y", FOFormula::role_atom("P", FOTerm::constant("a"), FOTerm::var("y")));
    CHECK(run_sql(abox, q4) == eval_fo(s, q4));
}

TEST_CASE("emitted SQL matches eval_fo on rewriting outputs") {
    int compared = 0;
    for (unsigned seed = 0; seed < 60; ++seed) {
        testutil::GenOptions o;
        o.shape = Shape::Horn;
        o.max_q = 2;
        o.concepts = 3;
        o.roles = 2;
        o.objects = 5;
        o.role_inclusions = seed % 3 == 0;
        o.negative_assertions = false;
        testutil::Gen gen(seed, o);
        auto kb = gen.admissible_kb();
        if (solve(kb).verdict != Verdict::Sat) continue;
        auto q = gen.query(3, 2, 1);
        HNminusKB hnm;
        try {
            hnm = normalize_to_hn_minus(kb);
        } catch (const FragmentError&) {
            continue;
        }
        HornRewriter rw(hnm.kb.tbox, hnm.id_role, 50000);
        FOQuery f;
        try {
            f = rw.rewrite(q);
        } catch (const BudgetError&) {
            continue;
        }
        auto s = build_abox_structure(hnm.kb.abox);
        CHECK(run_sql(hnm.kb.abox, f) == eval_fo(s, f));
        compared++;
    }
    CHECK(compared > 30);
}
