#include "torweyl/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "torweyl/chars.hpp"
#include "torweyl/decide.hpp"
#include "torweyl/errors.hpp"
#include "torweyl/opformat.hpp"
#include "torweyl/report.hpp"
#include "torweyl/weyl.hpp"

namespace torweyl {

namespace {

struct LoadedAction {
    TorusAction action;
    std::string digest;
};

LoadedAction load_action(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open action file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string content = buf.str();
    Json doc;
    try {
        doc = Json::parse(content);
    } catch (const Json::parse_error& e) {
        throw ParseError("action file '" + path + "' is not valid JSON: " + e.what());
    }
    return {action_from_json(doc), fnv1a_digest(content)};
}

Json envelope(const std::string& command, const Json& digest, const Json& options) {
    Json doc;
    doc["tool"] = "torweyl";
    doc["version"] = kToolVersion;
    doc["command"] = command;
    doc["input_digest"] = digest;
    doc["options"] = options;
    return doc;
}

Rat parse_rat(const std::string& text) {
    std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in rational '" + text + "'");
        return Rat(num) / Rat(den);
    } catch (const std::invalid_argument&) {
        throw ParseError("'" + text + "' is not a rational number");
    }
}

std::vector<std::size_t> parse_flip_indices(const std::string& text, std::size_t r) {
    std::vector<std::size_t> out;
    for (long long v : parse_int_list(text)) {
        if (v < 1 || static_cast<std::size_t>(v) > r)
            throw IndexOutOfRange("flip index " + std::to_string(v) + " outside 1.." +
                                  std::to_string(r));
        out.push_back(static_cast<std::size_t>(v - 1));
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
        throw IndexOutOfRange("repeated flip index");
    return out;
}

void emit(std::ostream& out, const Json& doc) {
    out << doc.dump(2) << "\n";
}

std::string yesno(bool b) {
    return b ? "yes" : "no";
}

// ---- analyze -------------------------------------------------------------

void text_analysis(std::ostream& out, const AnalysisReport& rep) {
    out << "transitive on torus factor: " << yesno(rep.transitive) << "\n"
        << "faithful:                   " << yesno(rep.faithful) << "\n"
        << "fixed space trivial:        " << yesno(rep.fixed_space_trivial) << "\n"
        << "invariants trivial:         " << yesno(rep.invariants_trivial) << "\n"
        << "enough simple fin-dim mods: " << yesno(rep.enough_fdm) << "\n"
        << "GK dimension (full ring):   " << rep.gk_total << "\n"
        << "GK dimension (fiber):       " << rep.gk_fiber << "\n";
    if (rep.flip_set) {
        out << "flip set I (1-based):       {";
        for (std::size_t i = 0; i < rep.flip_set->size(); ++i)
            out << (i ? "," : "") << (*rep.flip_set)[i] + 1;
        out << "}\n";
    }
    if (rep.positivity_witness) {
        out << "positivity witness beta:    [";
        for (std::size_t i = 0; i < rep.positivity_witness->beta.size(); ++i)
            out << (i ? "," : "") << rep.positivity_witness->beta[i].get_str();
        out << "]" << (rep.witness_for_flip ? "  (for the flipped action)" : "") << "\n";
    }
    if (rep.obstruction) {
        if (const auto* dep = std::get_if<DependentWeightsObstruction>(&*rep.obstruction)) {
            out << "obstruction:                dependent torus weights, relation [";
            for (std::size_t i = 0; i < dep->relation.size(); ++i)
                out << (i ? "," : "") << dep->relation[i].get_str();
            out << "]\n";
        } else {
            const auto& fc = std::get<FixedCoordinateObstruction>(*rep.obstruction);
            out << "obstruction:                fixed coordinate " << fc.index + 1
                << " (torsion order " << fc.torsion_order.get_str() << ")\n";
        }
    }
}

int cmd_analyze(std::ostream& out, const std::string& file, bool text) {
    LoadedAction la = load_action(file);
    AnalysisReport rep = analyze(la.action);
    if (text) {
        text_analysis(out, rep);
        return 0;
    }
    Json doc = envelope("analyze", la.digest, Json::object());
    doc["action"] = action_to_json(la.action);
    doc["result"] = analysis_to_json(rep);
    emit(out, doc);
    return 0;
}

// ---- normal-form ----------------------------------------------------------

int cmd_normal_form(std::ostream& out, const std::string& file, bool text) {
    LoadedAction la = load_action(file);
    SliceData sd = slice_data(la.action);
    if (text) {
        out << "gamma (row transform):\n"
            << sd.normal_form.transforms.left.to_string() << "\ndelta (column transform):\n"
            << sd.normal_form.transforms.right.to_string() << "\nnormalized matrix:\n"
            << sd.normal_form.normalized.to_string() << "\nd: [";
        for (std::size_t i = 0; i < sd.normal_form.d.size(); ++i)
            out << (i ? "," : "") << sd.normal_form.d[i].get_str();
        out << "]\ncomponent group invariant factors: [";
        for (std::size_t i = 0; i < sd.component_group.size(); ++i)
            out << (i ? "," : "") << sd.component_group[i].get_str();
        out << "]\n";
        return 0;
    }
    Json doc = envelope("normal-form", la.digest, Json::object());
    doc["action"] = action_to_json(la.action);
    doc["result"] = slice_to_json(sd);
    emit(out, doc);
    return 0;
}

// ---- dims ------------------------------------------------------------------

Json dim_entry(const TorusAction& a, const SliceData& sd, const IntVec& chi) {
    Json e;
    e["chi"] = vec_to_json(chi);
    e["chi_class"] = char_class_to_json(split_character(sd, chi));
    unsigned long long dim = weight_space_dim(a, chi);
    e["dim"] = dim;
    auto basis = weight_space_basis(a, chi);
    if (basis.size() != dim)
        throw InternalConsistencyError("weight-space basis size disagrees with the dimension");
    Json b = Json::array();
    for (const auto& lambda : basis) b.push_back(ll_vec_to_json(lambda));
    e["basis"] = b;
    return e;
}

int cmd_dims(std::ostream& out, const std::string& file, const std::string& chi_text,
             const std::string& sweep_text, bool text) {
    LoadedAction la = load_action(file);
    const TorusAction& a = la.action;
    SliceData sd = slice_data(a);

    Json options = Json::object();
    Json result;
    if (!chi_text.empty()) {
        options["chi"] = chi_text;
        IntVec chi = to_intvec(parse_int_list(chi_text));
        if (chi.size() != a.m())
            throw ShapeMismatch("--chi expects " + std::to_string(a.m()) +
                                " comma-separated integers");
        result = dim_entry(a, sd, chi);
        if (text) {
            out << "dim O(Y)_chi = " << result["dim"].get<unsigned long long>() << "\n";
            return 0;
        }
    } else {
        options["sweep"] = sweep_text;
        Rat bound = parse_rat(sweep_text);
        DimensionSeries series = dimension_series(a, bound);
        Json entries = Json::array();
        for (const SeriesTerm& t : series.terms) {
            IntVec chi = lift_character(sd, t.cls);
            Json e = dim_entry(a, sd, chi);
            if (e["dim"].get<unsigned long long>() != t.coeff)
                throw InternalConsistencyError(
                    "series coefficient disagrees with the weight-space dimension");
            e["grading"] = int_to_json(t.grading);
            entries.push_back(e);
        }
        result = Json::object();
        result["bound"] = format_rat(bound);
        result["entries"] = entries;
        if (text) {
            out << "grading | dim | chi\n";
            for (const Json& e : entries) {
                out << e["grading"].dump() << " | " << e["dim"].get<unsigned long long>()
                    << " | " << e["chi"].dump() << "\n";
            }
            return 0;
        }
    }
    Json doc = envelope("dims", la.digest, options);
    doc["action"] = action_to_json(a);
    doc["result"] = result;
    emit(out, doc);
    return 0;
}

// ---- series ----------------------------------------------------------------

int cmd_series(std::ostream& out, const std::string& file, const std::string& bound_text,
               bool text) {
    LoadedAction la = load_action(file);
    Rat bound = parse_rat(bound_text);
    DimensionSeries series = dimension_series(la.action, bound);
    if (text) {
        out << "grading | coeff | class(free;torsion)\n";
        for (const SeriesTerm& t : series.terms) {
            out << t.grading.get_str() << " | " << t.coeff << " | (";
            for (std::size_t i = 0; i < t.cls.free.size(); ++i)
                out << (i ? "," : "") << t.cls.free[i].get_str();
            out << ";";
            for (std::size_t i = 0; i < t.cls.torsion.size(); ++i)
                out << (i ? "," : "") << t.cls.torsion[i].get_str();
            out << ")\n";
        }
        return 0;
    }
    Json options;
    options["bound"] = bound_text;
    Json doc = envelope("series", la.digest, options);
    doc["action"] = action_to_json(la.action);
    doc["result"] = series_to_json(series);
    emit(out, doc);
    return 0;
}

// ---- act -------------------------------------------------------------------

int cmd_act(std::ostream& out, const std::string& file, const std::string& op_text,
            const std::string& mono_text, const std::string& flip_text, bool text) {
    LoadedAction la = load_action(file);
    const TorusAction& a = la.action;
    OperatorElement op = parse_operator(op_text, a.n(), a.r());
    std::vector<long long> mono = parse_int_list(mono_text);

    std::vector<ScaledMonomial> result;
    Json options;
    options["op"] = op_text;
    options["mono"] = mono_text;
    if (!flip_text.empty()) {
        std::vector<std::size_t> flips = parse_flip_indices(flip_text, a.r());
        options["flip"] = flip_text;
        result = twisted_apply(flips, op, mono);
    } else {
        result = torweyl::apply(op, mono);
    }

    if (text) {
        out << format_monomials(result) << "\n";
        return 0;
    }
    Json doc = envelope("act", la.digest, options);
    doc["action"] = action_to_json(a);
    Json res;
    res["op_canonical"] = format_operator(op);
    res["op_invariant"] = is_invariant(a, op);
    res["result_text"] = format_monomials(result);
    Json arr = Json::array();
    for (const ScaledMonomial& sm : result) {
        Json e;
        e["coeff"] = format_rat(sm.coeff);
        e["mono"] = ll_vec_to_json(sm.mono);
        arr.push_back(e);
    }
    res["result"] = arr;
    doc["result"] = res;
    emit(out, doc);
    return 0;
}

// ---- witness ---------------------------------------------------------------

int cmd_witness(std::ostream& out, const std::string& file, bool text) {
    LoadedAction la = load_action(file);
    const TorusAction& a = la.action;
    AnalysisReport rep = analyze(a);

    Json w;
    if (rep.enough_fdm) {
        w["kind"] = "flip_set";
        Json arr = Json::array();
        for (std::size_t i : *rep.flip_set) arr.push_back(i + 1);
        w["flip_set"] = arr;
        w["beta"] = vec_to_json(rep.positivity_witness->beta);
        w["y"] = rat_vec_to_json(rep.positivity_witness->y);
        w["for_flipped_action"] = rep.witness_for_flip;
        if (text) {
            out << "verdict: enough simple finite-dimensional modules\n";
            out << "flip set (1-based): " << arr.dump() << "\n";
            return 0;
        }
    } else if (rep.obstruction &&
               std::holds_alternative<DependentWeightsObstruction>(*rep.obstruction)) {
        NoFdmWitness nw = no_fdm_witness(a);
        w["kind"] = "dependent_torus_weights";
        w["relation"] = vec_to_json(nw.relation);
        w["pivot"] = nw.pivot + 1;
        w["qop"] = format_operator(nw.qop);
        w["pop"] = format_operator(nw.pop);
        w["pqop"] = format_operator(nw.pqop);
        w["all_invariant"] = is_invariant(a, nw.qop) && is_invariant(a, nw.pop) &&
                             is_invariant(a, nw.pqop);
        if (text) {
            out << "verdict: not enough (dependent torus weights)\n"
                << "Qop  = " << w["qop"].get<std::string>() << "\n"
                << "Pop  = " << w["pop"].get<std::string>() << "\n"
                << "PQop = " << w["pqop"].get<std::string>() << "\n";
            return 0;
        }
    } else {
        const auto& fc = std::get<FixedCoordinateObstruction>(*rep.obstruction);
        FixedCoordinateWitness fw = fixed_coordinate_witness(a, fc.index);
        w["kind"] = "fixed_coordinate";
        w["index"] = fc.index + 1;
        w["torsion_order"] = int_to_json(fw.torsion_order);
        w["qe"] = format_operator(fw.qe);
        w["pe"] = format_operator(fw.pe);
        w["pi"] = format_operator(fw.pi);
        if (text) {
            out << "verdict: not enough (fixed coordinate " << fc.index + 1 << ")\n"
                << "Q^e = " << w["qe"].get<std::string>() << "\n"
                << "P^e = " << w["pe"].get<std::string>() << "\n"
                << "Pi  = " << w["pi"].get<std::string>() << "\n";
            return 0;
        }
    }

    Json doc = envelope("witness", la.digest, Json::object());
    doc["action"] = action_to_json(a);
    doc["result"] = w;
    emit(out, doc);
    return 0;
}

// ---- iso-check ---------------------------------------------------------------

int cmd_iso_check(std::ostream& out, const std::string& file, long long bound, bool text) {
    LoadedAction la = load_action(file);
    QuotientIsoReport rep = quotient_iso_check_report(la.action, bound);
    if (!rep.ok)
        throw InternalConsistencyError("quotient isomorphism check failed on box bound " +
                                       std::to_string(bound));
    if (text) {
        out << "quotient isomorphism verified on " << rep.matches.size()
            << " semigroup elements (box bound " << bound << ")\n";
        return 0;
    }
    Json options;
    options["bound"] = bound;
    Json doc = envelope("iso-check", la.digest, options);
    doc["action"] = action_to_json(la.action);
    Json res;
    res["ok"] = true;
    res["pairs"] = rep.matches.size();
    Json matches = Json::array();
    for (const auto& [beta, eps] : rep.matches) {
        Json e;
        e["beta"] = ll_vec_to_json(beta);
        e["epsilon"] = ll_vec_to_json(eps);
        matches.push_back(e);
    }
    res["matches"] = matches;
    doc["result"] = res;
    emit(out, doc);
    return 0;
}

// ---- examples ------------------------------------------------------------------

IntMatrix interleaved_pattern(std::size_t n, bool swap_last_two) {
    IntMatrix l(2, n);
    for (std::size_t j = 0; j < n; ++j) {
        l.at(0, j) = (j % 2 == 0) ? 1 : 0;
        l.at(1, j) = (j % 2 == 0) ? 0 : 1;
    }
    if (swap_last_two) l.swap_cols(n - 2, n - 1);
    return l;
}

int cmd_examples(std::ostream& out, const std::string& family, long long n_opt, bool text) {
    std::vector<std::pair<std::string, TorusAction>> actions;
    long long n = n_opt;
    if (family == "odd") {
        if (n < 0) n = 2;
        if (n < 1) throw Error("family 'odd' needs --n >= 1");
        IntMatrix l(1, static_cast<std::size_t>(n));
        for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) l.at(0, j) = 1;
        actions.emplace_back("all_ones", TorusAction(l, static_cast<std::size_t>(n), 0));
    } else if (family == "even") {
        if (n < 0) n = 4;
        if (n < 2) throw Error("family 'even' needs --n >= 2");
        actions.emplace_back("interleaved",
                             TorusAction(interleaved_pattern(static_cast<std::size_t>(n), false),
                                         static_cast<std::size_t>(n), 0));
        actions.emplace_back("interleaved_swapped",
                             TorusAction(interleaved_pattern(static_cast<std::size_t>(n), true),
                                         static_cast<std::size_t>(n), 0));
    } else if (family == "gk4") {
        if (n >= 0 && n != 3) throw Error("family 'gk4' has fixed size n = 3");
        n = 3;
        IntMatrix l{{1, 1, 0}, {0, 0, 1}};
        actions.emplace_back("slice", TorusAction(l, 2, 1));
    } else {
        throw Error("unknown family '" + family + "' (expected odd, even, or gk4)");
    }

    Json arr = Json::array();
    for (const auto& [label, a] : actions) {
        AnalysisReport rep = analyze(a);
        if (text) {
            out << "[" << label << "] r=" << a.r() << " s=" << a.s() << " L="
                << a.l().to_string() << "\n";
            text_analysis(out, rep);
        }
        Json e;
        e["label"] = label;
        e["action"] = action_to_json(a);
        e["analysis"] = analysis_to_json(rep);
        arr.push_back(e);
    }
    if (text) return 0;

    Json options;
    options["family"] = family;
    options["n"] = n;
    Json doc = envelope("examples", nullptr, options);
    Json res;
    res["family"] = family;
    res["n"] = n;
    res["actions"] = arr;
    doc["result"] = res;
    emit(out, doc);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact decision tool for invariant differential operators of diagonal torus "
                 "actions"};
    app.require_subcommand(1);

    std::string file, chi_text, sweep_text, bound_text = "8", op_text, mono_text, flip_text;
    std::string family;
    long long iso_bound = 4, n_opt = -1;
    bool text = false;

    auto add_text = [&](CLI::App* sub) { sub->add_flag("--text", text, "human-readable output"); };
    auto add_file = [&](CLI::App* sub) {
        sub->add_option("file", file, "action JSON file {\"r\",\"s\",\"L\"}")->required();
    };

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "full verdict for an action");
    add_file(analyze_cmd);
    add_text(analyze_cmd);

    CLI::App* nf_cmd = app.add_subcommand("normal-form", "block normal form and slice data");
    add_file(nf_cmd);
    add_text(nf_cmd);

    CLI::App* dims_cmd = app.add_subcommand("dims", "weight-space dimensions");
    add_file(dims_cmd);
    add_text(dims_cmd);
    CLI::Option* chi_opt =
        dims_cmd->add_option("--chi", chi_text, "character, comma-separated integers in Z^m");
    CLI::Option* sweep_opt =
        dims_cmd->add_option("--sweep", sweep_text, "sweep all classes with grading <= bound");
    chi_opt->excludes(sweep_opt);

    CLI::App* series_cmd = app.add_subcommand("series", "truncated dimension series");
    add_file(series_cmd);
    add_text(series_cmd);
    series_cmd->add_option("--bound", bound_text, "grading truncation bound (rational)")
        ->required();

    CLI::App* act_cmd = app.add_subcommand("act", "apply an operator to a monomial");
    add_file(act_cmd);
    add_text(act_cmd);
    act_cmd->add_option("--op", op_text, "operator expression")->required();
    act_cmd->add_option("--mono", mono_text, "monomial exponents, comma-separated")->required();
    act_cmd->add_option("--flip", flip_text, "twist by sigma_I, 1-based indices");

    CLI::App* witness_cmd =
        app.add_subcommand("witness", "constructive witness for the verdict");
    add_file(witness_cmd);
    add_text(witness_cmd);

    CLI::App* iso_cmd = app.add_subcommand("iso-check", "verify the quotient isomorphism");
    add_file(iso_cmd);
    add_text(iso_cmd);
    iso_cmd->add_option("--bound", iso_bound, "box bound for the semigroup enumeration");

    CLI::App* ex_cmd = app.add_subcommand("examples", "generate the built-in example families");
    add_text(ex_cmd);
    ex_cmd->add_option("--family", family, "odd, even, or gk4")->required();
    ex_cmd->add_option("--n", n_opt, "family size parameter");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (analyze_cmd->parsed()) return cmd_analyze(out, file, text);
        if (nf_cmd->parsed()) return cmd_normal_form(out, file, text);
        if (dims_cmd->parsed()) {
            if (chi_text.empty() && sweep_text.empty())
                throw Error("dims requires --chi or --sweep");
            return cmd_dims(out, file, chi_text, sweep_text, text);
        }
        if (series_cmd->parsed()) return cmd_series(out, file, bound_text, text);
        if (act_cmd->parsed()) return cmd_act(out, file, op_text, mono_text, flip_text, text);
        if (witness_cmd->parsed()) return cmd_witness(out, file, text);
        if (iso_cmd->parsed()) return cmd_iso_check(out, file, iso_bound, text);
        if (ex_cmd->parsed()) return cmd_examples(out, family, n_opt, text);
        throw Error("no subcommand selected");
    } catch (const InternalConsistencyError& e) {
        err << "internal consistency failure: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace torweyl
