#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dlite/canonical.hpp"
#include "dlite/chase.hpp"
#include "dlite/closure.hpp"
#include "dlite/fol.hpp"
#include "dlite/gadgets.hpp"
#include "dlite/model.hpp"
#include "dlite/normalize.hpp"
#include "dlite/rewrite.hpp"
#include "dlite/sat.hpp"
#include "dlite/syntax.hpp"

using nlohmann::json;

namespace {

constexpr int kExitSat = 0;
constexpr int kExitUnsat = 1;
constexpr int kExitUnsupported = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInput = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw dlite::Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw dlite::Error("cannot write " + path);
    out << text;
}

int exit_of(dlite::Verdict v) {
    switch (v) {
        case dlite::Verdict::Sat: return kExitSat;
        case dlite::Verdict::Unsat: return kExitUnsat;
        case dlite::Verdict::FragmentUnsupported: return kExitUnsupported;
        case dlite::Verdict::BudgetExceeded: return kExitBudget;
    }
    return kExitInput;
}

struct Output {
    bool as_json = false;
    json obj;

    void set(const std::string& k, const json& v) { obj[k] = v; }
    int finish(int code, const std::string& text_line) {
        obj["exit"] = code;
        if (as_json)
            std::cout << obj.dump(2) << "\n";
        else
            std::cout << text_line << "\n";
        return code;
    }
};

json report_json(const dlite::FragmentReport& r) {
    json j;
    j["shape"] = dlite::to_string(r.shape);
    j["numbers"] = dlite::to_string(r.numbers);
    j["has_role_inclusions"] = r.has_role_inclusions;
    j["has_role_constraints"] = r.has_role_constraints;
    j["has_transitivity"] = r.has_transitivity;
    j["family_label"] = r.family_label;
    j["a123_violations"] = r.a123_violations;
    j["non_simple_number_restrictions"] = r.non_simple_number_restrictions;
    j["notes"] = r.notes;
    return j;
}

dlite::KnowledgeBase load_kb(const std::string& path, bool no_una) {
    dlite::KnowledgeBase kb = dlite::parse_kb(read_file(path));
    if (no_una) kb.una = false;
    return kb;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dlite: reasoning and query rewriting for the extended DL-Lite family"};
    app.require_subcommand(1);

    bool as_json = false;
    app.add_flag("--json", as_json, "emit a single JSON object");

    std::string kb_path, query_path, out_path, concept_text, object_name, emit = "fo";
    std::string engine = "ground", formula_path, family;
    bool no_una = false, expand = false;
    long long chase_bound = -1, partition_cap = 20000, type_budget = 1LL << 62,
              sigma_cap = 200000;
    int depth = 3;
    std::string dump_cnf_path;

    auto* c_classify = app.add_subcommand("classify", "report the fragment of a KB");
    c_classify->add_option("kb", kb_path)->required();
    c_classify->add_flag("--no-una", no_una);

    auto* c_sat = app.add_subcommand("sat", "decide KB satisfiability");
    c_sat->add_option("kb", kb_path)->required();
    c_sat->add_option("--engine", engine)->check(CLI::IsMember({"ground", "fo-rewrite", "chase"}));
    c_sat->add_flag("--no-una", no_una);
    c_sat->add_option("--chase-bound", chase_bound);
    c_sat->add_option("--partition-cap", partition_cap);
    c_sat->add_option("--type-budget", type_budget);
    c_sat->add_option("--dump-cnf", dump_cnf_path);

    auto* c_instance = app.add_subcommand("instance", "instance checking K |= C(a)");
    c_instance->add_option("kb", kb_path)->required();
    c_instance->add_option("--object", object_name)->required();
    c_instance->add_option("--concept", concept_text)->required();
    c_instance->add_flag("--no-una", no_una);

    auto* c_rewrite = app.add_subcommand("rewrite", "rewrite a query against the TBox");
    c_rewrite->add_option("kb", kb_path)->required();
    c_rewrite->add_option("--query", query_path)->required();
    c_rewrite->add_option("--emit", emit)->check(CLI::IsMember({"fo", "sql"}));
    c_rewrite->add_option("--sigma-cap", sigma_cap);

    auto* c_answer = app.add_subcommand("answer", "certain answers of a query");
    c_answer->add_option("kb", kb_path)->required();
    c_answer->add_option("--query", query_path)->required();
    c_answer->add_flag("--no-una", no_una);
    c_answer->add_option("--sigma-cap", sigma_cap);

    auto* c_mat = app.add_subcommand("materialize", "canonical model truncation");
    c_mat->add_option("kb", kb_path)->required();
    c_mat->add_option("--depth", depth);
    c_mat->add_flag("--no-una", no_una);

    auto* c_gadget = app.add_subcommand("gadget", "generate a hardness-gadget KB");
    c_gadget->add_option("family", family)
        ->required()
        ->check(CLI::IsMember({"2p2", "2p2-hn", "horn-hf", "one-in-three", "horn-f-nouna"}));
    c_gadget->add_option("--formula", formula_path)->required();
    c_gadget->add_option("--out", out_path)->required();
    c_gadget->add_flag("--expand", expand, "compile conjunctive lhs away (Lemma 5.9)");

    auto* c_dump = app.add_subcommand("dump-cnf", "dump the grounded clauses");
    c_dump->add_option("kb", kb_path)->required();
    c_dump->add_option("--out", out_path);
    c_dump->add_flag("--no-una", no_una);

    CLI11_PARSE(app, argc, argv);

    Output out;
    out.as_json = as_json;

    try {
        if (c_classify->parsed()) {
            out.set("command", "classify");
            auto kb = load_kb(kb_path, no_una);
            auto rep = dlite::classify(kb);
            out.set("report", report_json(rep));
            return out.finish(kExitSat, rep.family_label);
        }

        if (c_sat->parsed()) {
            out.set("command", "sat");
            auto kb = load_kb(kb_path, no_una);
            if (engine == "chase") {
                auto r = dlite::chase(kb, chase_bound);
                out.set("engine", "chase");
                out.set("steps", r.steps);
                switch (r.verdict) {
                    case dlite::ChaseVerdict::Sat:
                        out.set("verdict", "sat");
                        return out.finish(kExitSat, "satisfiable");
                    case dlite::ChaseVerdict::Unsat:
                        out.set("verdict", "unsat");
                        out.set("detail", r.detail);
                        return out.finish(kExitUnsat, "unsatisfiable");
                    case dlite::ChaseVerdict::BoundExceeded:
                        out.set("verdict", "budget-exceeded");
                        out.set("detail", r.detail);
                        return out.finish(kExitBudget, "budget-exceeded: " + r.detail);
                    case dlite::ChaseVerdict::Unsupported:
                        out.set("verdict", "fragment-unsupported");
                        out.set("detail", r.detail);
                        return out.finish(kExitUnsupported, "fragment-unsupported: " + r.detail);
                }
            }
            if (engine == "fo-rewrite") {
                auto rw = dlite::build_sat_rewriting(kb.tbox, type_budget);
                auto st = dlite::build_abox_structure(kb.abox);
                bool sat = dlite::eval_fo_sentence(st, rw.query);
                out.set("engine", "fo-rewrite");
                out.set("verdict", sat ? "sat" : "unsat");
                return out.finish(sat ? kExitSat : kExitUnsat,
                                  sat ? "satisfiable" : "unsatisfiable");
            }
            dlite::SolveOptions opts;
            opts.partition_cap = partition_cap;
            opts.type_budget = type_budget;
            auto r = dlite::solve(kb, opts);
            out.set("engine", "ground");
            out.set("verdict", dlite::to_string(r.verdict));
            out.set("report", report_json(r.report));
            if (!r.detail.empty()) out.set("detail", r.detail);
            if (!dump_cnf_path.empty() && r.clauses) write_file(dump_cnf_path, r.clauses->dimacs());
            std::string line = r.verdict == dlite::Verdict::Sat      ? "satisfiable"
                               : r.verdict == dlite::Verdict::Unsat ? "unsatisfiable"
                                                                    : std::string(to_string(r.verdict)) +
                                                                          ": " + r.detail;
            return out.finish(exit_of(r.verdict), line);
        }

        if (c_instance->parsed()) {
            out.set("command", "instance");
            auto kb = load_kb(kb_path, no_una);
            auto c = dlite::parse_concept(concept_text);
            auto kbs = dlite::reduce_instance_check(kb, object_name, c);
            bool entailed = true;
            for (const auto& k : kbs) {
                auto r = dlite::solve(k);
                if (r.verdict == dlite::Verdict::FragmentUnsupported ||
                    r.verdict == dlite::Verdict::BudgetExceeded) {
                    out.set("verdict", dlite::to_string(r.verdict));
                    out.set("detail", r.detail);
                    return out.finish(exit_of(r.verdict),
                                      std::string(to_string(r.verdict)) + ": " + r.detail);
                }
                if (r.verdict == dlite::Verdict::Sat) entailed = false;
            }
            out.set("entailed", entailed);
            return out.finish(entailed ? kExitSat : kExitUnsat,
                              entailed ? "entailed" : "not entailed");
        }

        if (c_rewrite->parsed()) {
            out.set("command", "rewrite");
            auto kb = load_kb(kb_path, false);  // the ABox section is never read
            auto q = dlite::parse_query(read_file(query_path));
            auto f = dlite::rewrite_query(kb.tbox, q, sigma_cap);
            std::string text = emit == "sql" ? dlite::emit_sql(f) : f.str();
            out.set("emit", emit);
            out.set("query", text);
            return out.finish(kExitSat, text);
        }

        if (c_answer->parsed()) {
            out.set("command", "answer");
            auto kb = load_kb(kb_path, no_una);
            auto q = dlite::parse_query(read_file(query_path));
            auto answers = dlite::certain_answers(kb, q, sigma_cap);
            json arr = json::array();
            std::ostringstream lines;
            for (const auto& t : answers) {
                json tup = json::array();
                std::string line;
                for (const auto& v : t) {
                    tup.push_back(v);
                    line += (line.empty() ? "" : ",") + v;
                }
                arr.push_back(tup);
                lines << (q.ground() ? "true" : line) << "\n";
            }
            out.set("answers", arr);
            std::string text = lines.str();
            if (q.ground() && answers.empty()) text = "false\n";
            if (!text.empty() && text.back() == '\n') text.pop_back();
            return out.finish(kExitSat, text);
        }

        if (c_mat->parsed()) {
            out.set("command", "materialize");
            auto kb = load_kb(kb_path, no_una);
            auto r = dlite::solve(kb);
            if (r.verdict != dlite::Verdict::Sat) {
                out.set("verdict", dlite::to_string(r.verdict));
                return out.finish(exit_of(r.verdict), std::string(to_string(r.verdict)));
            }
            dlite::KnowledgeBase cur = kb;
            if (!cur.una) {
                if (r.report.numbers == dlite::Numbers::F)
                    cur = dlite::functional_merge(cur);
                else {
                    cur = dlite::merge_equalities(cur).first;
                    cur.abox.inequalities.clear();
                    cur.una = true;
                }
            }
            if (dlite::classify(cur).has_transitivity) cur = dlite::eliminate_transitivity(cur);
            auto hnm = dlite::normalize_to_hn_minus(cur);
            auto sent = dlite::translate(hnm);
            dlite::ModelAtomSet atoms;
            if (r.report.shape == dlite::Shape::Bool) {
                auto cs = dlite::ground(sent);
                auto sr = dlite::dpll(cs);
                atoms = dlite::model_atoms_from(sent, cs, sr.true_atoms);
            } else {
                atoms = dlite::minimal_model(sent);
            }
            auto model = dlite::unravel(atoms, hnm, depth);
            std::string text = dlite::print_interpretation(model.interpretation,
                                                           model.annotations());
            out.set("elements", model.element_count());
            out.set("interpretation", text);
            return out.finish(kExitSat, text);
        }

        if (c_gadget->parsed()) {
            out.set("command", "gadget");
            std::string text = read_file(formula_path);
            dlite::KnowledgeBase kb;
            json info;
            if (family == "2p2") {
                auto g = dlite::gen_2p2cnf(dlite::parse_2p2(text), expand);
                kb = g.kb;
                info["target"] = g.target.str();
            } else if (family == "2p2-hn") {
                auto g = dlite::gen_core_hn_2p2(dlite::parse_2p2(text), expand);
                kb = g.kb;
                info["target"] = g.target.str();
            } else if (family == "horn-hf") {
                auto g = dlite::gen_horncnf_hf(dlite::parse_horn(text), expand);
                kb = g.kb;
                info["targets"] = g.var_targets;
            } else if (family == "one-in-three") {
                auto g = dlite::gen_one_in_three(dlite::parse_oit(text));
                kb = g.kb;
            } else {
                auto g = dlite::gen_horncnf_f_nouna(dlite::parse_horn(text));
                kb = g.kb;
                info["targets"] = g.var_targets;
            }
            write_file(out_path, dlite::print_kb(kb));
            out.set("family", family);
            out.set("out", out_path);
            out.set("info", info);
            return out.finish(kExitSat, "wrote " + out_path);
        }

        if (c_dump->parsed()) {
            out.set("command", "dump-cnf");
            auto kb = load_kb(kb_path, no_una);
            auto r = dlite::solve(kb);
            if (!r.clauses) {
                out.set("verdict", dlite::to_string(r.verdict));
                return out.finish(exit_of(r.verdict),
                                  "no clauses: " + std::string(to_string(r.verdict)));
            }
            std::string text = r.clauses->dimacs();
            if (!out_path.empty()) {
                write_file(out_path, text);
                out.set("out", out_path);
                return out.finish(kExitSat, "wrote " + out_path);
            }
            out.set("dimacs", text);
            return out.finish(kExitSat, text);
        }
    } catch (const dlite::ParseError& e) {
        out.set("error", e.what());
        return out.finish(kExitInput, std::string("input error: ") + e.what());
    } catch (const dlite::FragmentError& e) {
        out.set("error", e.what());
        return out.finish(kExitUnsupported, std::string("fragment-unsupported: ") + e.what());
    } catch (const dlite::BudgetError& e) {
        out.set("error", e.what());
        return out.finish(kExitBudget, std::string("budget-exceeded: ") + e.what());
    } catch (const dlite::InconsistentKbError& e) {
        out.set("error", e.what());
        return out.finish(kExitUnsat, std::string("inconsistent-kb: ") + e.what());
    } catch (const std::exception& e) {
        out.set("error", e.what());
        return out.finish(kExitInput, std::string("error: ") + e.what());
    }
    return kExitInput;
}
