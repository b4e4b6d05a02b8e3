#include "ptopos/report.h"

#include <chrono>
#include <memory>
#include <sstream>

#include "ptopos/heyting.h"
#include "ptopos/presheaf.h"
#include "ptopos/quantum.h"
#include "ptopos/scenario.h"
#include "ptopos/valuation.h"

namespace ptopos {

using nlohmann::ordered_json;

namespace {

struct Loaded {
    Scenario scenario;
    std::shared_ptr<const OperatorCategory> ocat;
};

Loaded load_and_build(const std::string &path) {
    Loaded l;
    l.scenario = load_scenario(path);
    validate_scenario(l.scenario);
    l.ocat = std::make_shared<const OperatorCategory>(
        build_operator_category(scenario_operators(l.scenario), l.scenario.close_under_questions));
    return l;
}

ordered_json rational_list(const std::vector<Rational> &values) {
    ordered_json out = ordered_json::array();
    for (const Rational &v : values) {
        out.push_back(to_string(v));
    }
    return out;
}

ordered_json function_json(const OperatorCategory &ocat, ArrowId f) {
    const FinCategory &cat = ocat.base();
    const SpectralOperator &a = ocat.op(cat.dom(f));
    const SpectralOperator &b = ocat.op(cat.cod(f));
    const SpectralMap &map = ocat.spectral_map(f);
    ordered_json out = ordered_json::array();
    for (size_t k = 0; k < map.size(); k++) {
        out.push_back({to_string(a.spectrum[k]), to_string(b.spectrum[map[k]])});
    }
    return out;
}

ordered_json table_json(const HeytingAlgebraTable &t) {
    const size_t n = t.size();
    ordered_json out;
    out["elements"] = t.labels;
    out["zero"] = t.zero;
    out["one"] = t.one;
    auto square = [&](auto op) {
        ordered_json rows = ordered_json::array();
        for (size_t x = 0; x < n; x++) {
            ordered_json row = ordered_json::array();
            for (size_t y = 0; y < n; y++) {
                row.push_back(op(x, y));
            }
            rows.push_back(std::move(row));
        }
        return rows;
    };
    out["meet"] = square([&](size_t x, size_t y) {
        return t.meet(x, y);
    });
    out["join"] = square([&](size_t x, size_t y) {
        return t.join(x, y);
    });
    out["implies"] = square([&](size_t x, size_t y) {
        return t.implies(x, y);
    });
    ordered_json negs = ordered_json::array();
    for (size_t x = 0; x < n; x++) {
        negs.push_back(t.negation(x));
    }
    out["not"] = std::move(negs);
    auto violation = find_heyting_law_violation(t);
    out["heyting_laws"] = violation ? *violation : "hold";
    ordered_json flags = ordered_json::array();
    for (size_t x : excluded_middle_failures(t)) {
        flags.push_back(t.labels[x]);
    }
    out["excluded_middle_failures"] = std::move(flags);
    return out;
}

ordered_json run_validate(const std::string &path, const CommandOptions &) {
    Scenario s = load_scenario(path);
    validate_scenario(s);
    std::vector<SpectralOperator> ops = scenario_operators(s);
    if (s.close_under_questions) {
        build_operator_category(ops, true);
    }
    ordered_json r;
    r["status"] = "valid";
    r["dimension"] = s.dimension;
    r["close"] = s.close_under_questions;
    ordered_json jops = ordered_json::array();
    for (const SpectralOperator &op : ops) {
        ordered_json j;
        j["name"] = op.name;
        j["spectrum"] = rational_list(op.spectrum);
        ordered_json ranks = ordered_json::array();
        for (const Matrix &p : op.projectors) {
            Rational tr;
            for (size_t k = 0; k < p.dim(); k++) {
                tr += p.at(k, k).re;
            }
            ranks.push_back(to_string(tr));
        }
        j["ranks"] = std::move(ranks);
        jops.push_back(std::move(j));
    }
    r["operators"] = std::move(jops);
    ordered_json states = ordered_json::array();
    for (const StateDecl &st : s.states) {
        states.push_back(st.name);
    }
    r["states"] = std::move(states);
    r["queries"] = s.queries.size();
    return r;
}

ordered_json run_category(const std::string &path, const CommandOptions &) {
    Loaded l = load_and_build(path);
    const OperatorCategory &ocat = *l.ocat;
    const FinCategory &cat = ocat.base();
    SubobjectClassifier omega(ocat.base_ptr());
    ordered_json r;
    r["object_count"] = cat.num_objects();
    r["arrow_count"] = cat.num_arrows();
    ordered_json objects = ordered_json::array();
    for (ObjectId a : cat.objects()) {
        ordered_json j;
        j["name"] = ocat.op(a).name;
        j["spectrum"] = rational_list(ocat.op(a).spectrum);
        j["sieve_count"] = omega.sieves(a).size();
        objects.push_back(std::move(j));
    }
    r["objects"] = std::move(objects);
    ordered_json arrows = ordered_json::array();
    for (const Arrow &f : cat.arrows()) {
        ordered_json j;
        j["name"] = f.name;
        j["dom"] = cat.object_name(f.dom);
        j["cod"] = cat.object_name(f.cod);
        j["function"] = function_json(ocat, f.id);
        arrows.push_back(std::move(j));
    }
    r["arrows"] = std::move(arrows);
    return r;
}

ordered_json run_valuate(const std::string &path, const CommandOptions &) {
    Loaded l = load_and_build(path);
    const OperatorCategory &ocat = *l.ocat;
    const FinCategory &cat = ocat.base();
    if (l.scenario.queries.empty()) {
        fail(ErrorKind::InvariantViolation, "scenario has no QUERY lines");
    }
    ordered_json queries = ordered_json::array();
    for (const QueryDecl &q : l.scenario.queries) {
        const StateDecl *decl = nullptr;
        for (const StateDecl &s : l.scenario.states) {
            if (s.name == q.state) {
                decl = &s;
            }
        }
        State psi(decl->vector);
        ObjectId a = ocat.find(q.op);
        SpectralSubset delta = spectral_subset(ocat.op(a), q.delta);
        Sieve s = nu_state(ocat, psi, a, delta);

        ordered_json j;
        j["state"] = q.state;
        j["operator"] = q.op;
        j["delta"] = rational_list(subset_values(ocat.op(a), delta));
        j["probability"] = to_string(born_prob(psi, ocat.op(a), delta));
        j["sieve_kind"] = s == principal_sieve(cat, a) ? "principal" : s.empty() ? "empty" : "intermediate";
        ordered_json members = ordered_json::array();
        for (ArrowId f : s.members()) {
            ordered_json m;
            m["codomain"] = cat.object_name(cat.cod(f));
            m["function"] = function_json(ocat, f);
            members.push_back(std::move(m));
        }
        j["sieve"] = std::move(members);
        queries.push_back(std::move(j));
    }
    ordered_json r;
    r["queries"] = std::move(queries);
    return r;
}

ordered_json run_ks_search(const std::string &path, const CommandOptions &options) {
    Loaded l = load_and_build(path);
    const OperatorCategory &ocat = *l.ocat;
    const FinCategory &cat = ocat.base();
    SearchOptions search;
    search.parallel = options.parallel;
    if (options.guard) {
        search.max_nodes = *options.guard;
    }
    SearchStats stats;
    Presheaf d = dual_presheaf(ocat);
    std::vector<GlobalSection> sections = global_sections(d, search, &stats);
    ordered_json r;
    r["object_count"] = cat.num_objects();
    r["arrow_count"] = cat.num_arrows();
    r["section_count"] = sections.size();
    r["search_nodes"] = stats.nodes;
    r["certificate"] = sections.empty() ? "KS obstruction certified" : "global sections exist";
    ordered_json list = ordered_json::array();
    for (const GlobalSection &g : sections) {
        ordered_json j = ordered_json::array();
        for (ObjectId a : cat.objects()) {
            j.push_back({cat.object_name(a), to_string(ocat.op(a).spectrum[g.choice[a.value]])});
        }
        list.push_back(std::move(j));
    }
    r["sections"] = std::move(list);
    return r;
}

bool looks_like_topology(const std::string &path, const std::string &text) {
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".top") == 0) {
        return true;
    }
    std::istringstream in(text);
    std::string word;
    in >> word;
    return word == "POINTS" || word == "ELEMENTS";
}

ordered_json run_heyting(const std::string &path, const CommandOptions &) {
    std::string text = read_file(path);
    ordered_json algebras = ordered_json::array();
    auto add_sieve_algebras = [&](const FinCategory &cat, auto name_of) {
        for (ObjectId a : cat.objects()) {
            ordered_json j;
            j["context"] = name_of(a);
            j.update(table_json(sieve_algebra(cat, a)));
            algebras.push_back(std::move(j));
        }
    };
    ordered_json r;
    if (looks_like_topology(path, text)) {
        TopologyFile file = parse_topology_file(text);
        if (auto *top = std::get_if<FiniteTopology>(&file)) {
            r["source"] = "topology";
            ordered_json j;
            j["context"] = "open sets";
            j.update(table_json(open_set_heyting(*top)));
            algebras.push_back(std::move(j));
        } else {
            const PosetDecl &poset = std::get<PosetDecl>(file);
            r["source"] = "poset";
            FinCategory cat = poset_to_category(poset.elements, reflexive_transitive_closure(poset.elements, poset.leq));
            add_sieve_algebras(cat, [&](ObjectId a) {
                return cat.object_name(a);
            });
        }
    } else {
        Loaded l = load_and_build(path);
        r["source"] = "scenario";
        add_sieve_algebras(l.ocat->base(), [&](ObjectId a) {
            return l.ocat->op(a).name;
        });
    }
    r["algebras"] = std::move(algebras);
    return r;
}

std::string join_function(const ordered_json &f) {
    std::string out;
    for (const auto &pair : f) {
        out += (out.empty() ? "" : ", ") + pair[0].get<std::string>() + "->" + pair[1].get<std::string>();
    }
    return out;
}

std::string join_strings(const ordered_json &xs, const char *sep = ", ") {
    std::string out;
    for (const auto &x : xs) {
        out += (out.empty() ? "" : sep) + (x.is_string() ? x.get<std::string>() : x.dump());
    }
    return out;
}

void render_table(std::ostringstream &out, const ordered_json &alg) {
    const auto &elems = alg["elements"];
    out << "  elements:\n";
    for (size_t k = 0; k < elems.size(); k++) {
        out << "    [" << k << "] " << elems[k].get<std::string>() << "\n";
    }
    out << "  zero: [" << alg["zero"].get<size_t>() << "]  one: [" << alg["one"].get<size_t>() << "]\n";
    for (const char *op : {"meet", "join", "implies"}) {
        out << "  " << op << ":\n";
        for (const auto &row : alg[op]) {
            out << "    " << join_strings(row, " ") << "\n";
        }
    }
    out << "  not: " << join_strings(alg["not"], " ") << "\n";
    out << "  heyting laws: " << alg["heyting_laws"].get<std::string>() << "\n";
    const auto &flags = alg["excluded_middle_failures"];
    if (flags.empty()) {
        out << "  excluded middle: holds everywhere\n";
    } else {
        for (const auto &x : flags) {
            out << "  FLAG " << x.get<std::string>() << ": x or not x != 1\n";
        }
    }
}

}  // namespace

std::string render_human(const ordered_json &r) {
    std::ostringstream out;
    const std::string command = r["command"];
    out << command << " " << r["input"].get<std::string>() << "\n";
    if (r.contains("error")) {
        const auto &e = r["error"];
        out << "status: " << r["status"].get<std::string>() << "\n";
        out << "error: " << e["kind"].get<std::string>() << ": " << e["message"].get<std::string>() << "\n";
        if (e.contains("guard")) {
            out << "guard: " << e["guard"].dump() << "\n";
        }
        return out.str();
    }
    if (command == "validate") {
        out << "status: " << r["status"].get<std::string>() << "\n";
        out << "dimension: " << r["dimension"].dump() << "\n";
        out << "close under questions: " << (r["close"].get<bool>() ? "on" : "off") << "\n";
        for (const auto &op : r["operators"]) {
            out << "operator " << op["name"].get<std::string>() << ": spectrum {" << join_strings(op["spectrum"])
                << "}, ranks {" << join_strings(op["ranks"]) << "}\n";
        }
        out << "states: " << join_strings(r["states"]) << "\n";
        out << "queries: " << r["queries"].dump() << "\n";
    } else if (command == "category") {
        out << "objects: " << r["object_count"].dump() << ", arrows: " << r["arrow_count"].dump() << "\n";
        for (const auto &o : r["objects"]) {
            out << "object " << o["name"].get<std::string>() << "  spectrum {" << join_strings(o["spectrum"])
                << "}  sieves: " << o["sieve_count"].dump() << "\n";
        }
        for (const auto &a : r["arrows"]) {
            out << "arrow " << a["name"].get<std::string>() << "  f: " << join_function(a["function"]) << "\n";
        }
    } else if (command == "valuate") {
        for (const auto &q : r["queries"]) {
            out << "query " << q["state"].get<std::string>() << " " << q["operator"].get<std::string>() << " {"
                << join_strings(q["delta"]) << "}\n";
            out << "  probability: " << q["probability"].get<std::string>() << "\n";
            out << "  sieve: " << q["sieve_kind"].get<std::string>() << " sieve, " << q["sieve"].size() << " arrows\n";
            for (const auto &m : q["sieve"]) {
                out << "    -> " << m["codomain"].get<std::string>() << "  f: " << join_function(m["function"]) << "\n";
            }
        }
    } else if (command == "ks-search") {
        out << "objects: " << r["object_count"].dump() << ", arrows: " << r["arrow_count"].dump() << "\n";
        out << "sections: " << r["section_count"].dump() << "\n";
        out << r["certificate"].get<std::string>() << " (search nodes: " << r["search_nodes"].dump() << ")\n";
        size_t k = 0;
        for (const auto &s : r["sections"]) {
            out << "section " << ++k << ":";
            for (const auto &entry : s) {
                out << " " << entry[0].get<std::string>() << "=" << entry[1].get<std::string>() << ";";
            }
            out << "\n";
        }
    } else if (command == "heyting") {
        out << "source: " << r["source"].get<std::string>() << "\n";
        for (const auto &alg : r["algebras"]) {
            out << "algebra at " << alg["context"].get<std::string>() << "\n";
            render_table(out, alg);
        }
    }
    return out.str();
}

CommandResult run_command(std::string_view command, const std::string &path, const CommandOptions &options) {
    using Runner = ordered_json (*)(const std::string &, const CommandOptions &);
    Runner runner = nullptr;
    if (command == "validate") {
        runner = run_validate;
    } else if (command == "category") {
        runner = run_category;
    } else if (command == "valuate") {
        runner = run_valuate;
    } else if (command == "ks-search") {
        runner = run_ks_search;
    } else if (command == "heyting") {
        runner = run_heyting;
    } else {
        throw std::invalid_argument("unknown command " + std::string(command));
    }

    CommandResult result;
    ordered_json record;
    record["command"] = std::string(command);
    record["input"] = path;
    record["status"] = "ok";
    auto start = std::chrono::steady_clock::now();
    auto report_error = [&](const char *status, const ToposError &e) {
        record["status"] = status;
        ordered_json err;
        err["kind"] = std::string(error_kind_name(e.kind()));
        err["message"] = e.what();
        if (auto *pf = dynamic_cast<const ParseFailure *>(&e)) {
            err["line"] = pf->line();
            err["column"] = pf->column();
        }
        if (e.kind() == ErrorKind::SizeLimitExceeded) {
            err["guard"] = options.guard.value_or(SearchOptions{}.max_nodes);
        }
        record["error"] = std::move(err);
    };
    try {
        record.update(runner(path, options));
        result.exit_code = kExitOk;
    } catch (const ParseFailure &e) {
        report_error("parse_error", e);
        result.exit_code = kExitParse;
    } catch (const ToposError &e) {
        if (e.kind() == ErrorKind::SizeLimitExceeded) {
            report_error("size_guard", e);
            result.exit_code = kExitGuard;
        } else {
            report_error("invalid", e);
            result.exit_code = kExitInvalid;
        }
    }
    result.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    result.output = options.format == OutputFormat::Record ? record.dump(2) + "\n" : render_human(record);
    result.record = std::move(record);
    return result;
}

CommandResult cmd_validate(const std::string &path, const CommandOptions &options) {
    return run_command("validate", path, options);
}

CommandResult cmd_category(const std::string &path, const CommandOptions &options) {
    return run_command("category", path, options);
}

CommandResult cmd_valuate(const std::string &path, const CommandOptions &options) {
    return run_command("valuate", path, options);
}

CommandResult cmd_ks_search(const std::string &path, const CommandOptions &options) {
    return run_command("ks-search", path, options);
}

CommandResult cmd_heyting(const std::string &path, const CommandOptions &options) {
    return run_command("heyting", path, options);
}

}  // namespace ptopos
