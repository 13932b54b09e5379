#include "torweyl/report.hpp"

#include <cstdint>

#include "torweyl/opformat.hpp"

namespace torweyl {

namespace {

const Int kJsonMax = (Int(1) << 53);

Int int_from_json(const Json& v, const char* what) {
    if (v.is_number_integer()) return Int(static_cast<long>(v.get<std::int64_t>()));
    if (v.is_number_unsigned()) return Int(static_cast<unsigned long>(v.get<std::uint64_t>()));
    if (v.is_string()) {
        const std::string& s = v.get_ref<const std::string&>();
        try {
            return Int(s);
        } catch (const std::invalid_argument&) {
            throw ParseError(std::string(what) + ": '" + s + "' is not a decimal integer");
        }
    }
    throw ParseError(std::string(what) + ": expected an integer");
}

}  // namespace

Json int_to_json(const Int& v) {
    if (abs(v) < kJsonMax) return Json(v.get_si());
    return Json(v.get_str());
}

Json vec_to_json(const IntVec& v) {
    Json arr = Json::array();
    for (const Int& x : v) arr.push_back(int_to_json(x));
    return arr;
}

Json rat_vec_to_json(const RatVec& v) {
    Json arr = Json::array();
    for (const Rat& x : v) arr.push_back(format_rat(x));
    return arr;
}

Json matrix_to_json(const IntMatrix& m) {
    Json arr = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) arr.push_back(vec_to_json(m.row(i)));
    return arr;
}

Json ll_vec_to_json(const std::vector<long long>& v) {
    Json arr = Json::array();
    for (long long x : v) arr.push_back(x);
    return arr;
}

TorusAction action_from_json(const Json& doc) {
    if (!doc.is_object()) throw ParseError("action file: top-level JSON object expected");
    for (const char* key : {"r", "s", "L"})
        if (!doc.contains(key))
            throw ParseError(std::string("action file: missing field \"") + key + "\"");

    Int rz = int_from_json(doc["r"], "action file field \"r\"");
    Int sz = int_from_json(doc["s"], "action file field \"s\"");
    if (rz < 0 || sz < 0 || rz + sz > 4096)
        throw ParseError("action file: r and s must be small nonnegative integers");
    const std::size_t r = rz.get_ui(), s = sz.get_ui();

    const Json& lj = doc["L"];
    if (!lj.is_array() || lj.empty())
        throw ParseError("action file: \"L\" must be a nonempty array of rows");
    const std::size_t m = lj.size();
    std::size_t n = 0;
    for (const Json& row : lj) {
        if (!row.is_array()) throw ParseError("action file: each row of \"L\" must be an array");
        if (n == 0) n = row.size();
        if (row.size() != n || n == 0)
            throw ParseError("action file: \"L\" rows must be nonempty and rectangular");
    }
    IntMatrix l(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            l.at(i, j) = int_from_json(lj[i][j], "action file matrix entry");
    return TorusAction(l, r, s);
}

Json action_to_json(const TorusAction& a) {
    Json j;
    j["r"] = a.r();
    j["s"] = a.s();
    j["m"] = a.m();
    j["n"] = a.n();
    j["L"] = matrix_to_json(a.l());
    return j;
}

Json char_class_to_json(const CharClass& c) {
    Json j;
    j["free"] = vec_to_json(c.free);
    j["torsion"] = vec_to_json(c.torsion);
    return j;
}

Json slice_to_json(const SliceData& sd) {
    Json j;
    j["gamma"] = matrix_to_json(sd.normal_form.transforms.left);
    j["delta"] = matrix_to_json(sd.normal_form.transforms.right);
    j["normalized"] = matrix_to_json(sd.normal_form.normalized);
    j["l1"] = matrix_to_json(sd.normal_form.l1);
    j["l2"] = matrix_to_json(sd.normal_form.l2);
    j["d"] = vec_to_json(sd.normal_form.d);
    Json rho = Json::array();
    for (const IntVec& v : sd.rho) rho.push_back(vec_to_json(v));
    j["rho"] = rho;
    j["component_group"] = vec_to_json(sd.component_group);
    j["identity_rank"] = sd.identity_rank;
    return j;
}

Json series_to_json(const DimensionSeries& s) {
    Json j;
    j["bound"] = format_rat(s.bound);
    j["beta"] = vec_to_json(s.beta);
    j["y"] = rat_vec_to_json(s.y);
    Json terms = Json::array();
    for (const SeriesTerm& t : s.terms) {
        Json tj;
        tj["class"] = char_class_to_json(t.cls);
        tj["grading"] = int_to_json(t.grading);
        tj["coeff"] = t.coeff;
        terms.push_back(tj);
    }
    j["terms"] = terms;
    return j;
}

Json analysis_to_json(const AnalysisReport& rep) {
    Json j;
    j["faithful"] = rep.faithful;
    j["transitive_on_torus"] = rep.transitive;
    j["fixed_space_trivial"] = rep.fixed_space_trivial;
    j["invariants_trivial"] = rep.invariants_trivial;
    j["enough_fdm"] = rep.enough_fdm;
    j["gk_full"] = rep.gk_total;
    j["gk_fiber"] = rep.gk_fiber;

    if (rep.flip_set) {
        Json arr = Json::array();
        for (std::size_t i : *rep.flip_set) arr.push_back(i + 1);
        j["flip_set"] = arr;
    } else {
        j["flip_set"] = nullptr;
    }

    if (rep.positivity_witness) {
        Json w;
        w["beta"] = vec_to_json(rep.positivity_witness->beta);
        w["y"] = rat_vec_to_json(rep.positivity_witness->y);
        w["for_flipped_action"] = rep.witness_for_flip;
        j["positivity_witness"] = w;
    } else {
        j["positivity_witness"] = nullptr;
    }

    if (rep.obstruction) {
        Json o;
        if (const auto* dep = std::get_if<DependentWeightsObstruction>(&*rep.obstruction)) {
            o["kind"] = "dependent_torus_weights";
            o["relation"] = vec_to_json(dep->relation);
        } else {
            const auto& fc = std::get<FixedCoordinateObstruction>(*rep.obstruction);
            o["kind"] = "fixed_coordinate";
            o["index"] = fc.index + 1;
            o["torsion_order"] = int_to_json(fc.torsion_order);
        }
        j["obstruction"] = o;
    } else {
        j["obstruction"] = nullptr;
    }
    return j;
}

std::string fnv1a_digest(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[h & 0xF];
        h >>= 4;
    }
    return out;
}

}  // namespace torweyl
