#pragma once

// JSON input documents (quiver + group + monomial action) and check reports
// for the batch front end. Scalars are given per arrow as zeta^{num} at level
// den; parsing rescales everything to the least common level.

#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "abelian.hpp"
#include "action.hpp"
#include "quiver.hpp"
#include "representation.hpp"

namespace quiverfold {

using Json = nlohmann::json;

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputDocument {
    Quiver quiver;
    MonomialAction action;
};

inline bool operator==(const InputDocument& a, const InputDocument& b) {
    if (a.quiver.vertex_names != b.quiver.vertex_names ||
        a.quiver.arrow_names != b.quiver.arrow_names ||
        a.quiver.num_arrows() != b.quiver.num_arrows())
        return false;
    for (int t = 0; t < a.quiver.num_arrows(); ++t)
        if (a.quiver.arrows[t].src != b.quiver.arrows[t].src ||
            a.quiver.arrows[t].tgt != b.quiver.arrows[t].tgt)
            return false;
    return a.action.group.orders == b.action.group.orders && a.action.level == b.action.level &&
           a.action.vertex_perm == b.action.vertex_perm &&
           a.action.arrow_perm == b.action.arrow_perm;
}

namespace detail {

inline const Json& need(const Json& j, const char* key, const char* where) {
    if (!j.is_object())
        throw SchemaError(std::string(where) + " must be an object");
    auto it = j.find(key);
    if (it == j.end())
        throw SchemaError(std::string(where) + " is missing the field '" + key + "'");
    return *it;
}

inline std::string need_string(const Json& j, const char* where) {
    if (!j.is_string()) throw SchemaError(std::string(where) + " must be a string");
    return j.get<std::string>();
}

inline long long need_int(const Json& j, const char* where) {
    if (!j.is_number_integer()) throw SchemaError(std::string(where) + " must be an integer");
    return j.get<long long>();
}

}  // namespace detail

inline InputDocument parse_input(const Json& j) {
    using detail::need;
    using detail::need_int;
    using detail::need_string;
    InputDocument doc;

    const Json& jq = need(j, "quiver", "document");
    const Json& jverts = need(jq, "vertices", "quiver");
    const Json& jarrows = need(jq, "arrows", "quiver");
    if (!jverts.is_array() || jverts.empty())
        throw SchemaError("quiver.vertices must be a nonempty array");
    if (!jarrows.is_array()) throw SchemaError("quiver.arrows must be an array");
    std::vector<std::string> verts;
    for (const Json& v : jverts) verts.push_back(need_string(v, "vertex name"));
    std::vector<std::tuple<std::string, std::string, std::string>> arrows;
    for (const Json& a : jarrows)
        arrows.push_back({need_string(need(a, "id", "arrow"), "arrow id"),
                          need_string(need(a, "src", "arrow"), "arrow src"),
                          need_string(need(a, "tgt", "arrow"), "arrow tgt")});
    try {
        doc.quiver = make_quiver(verts, arrows);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("quiver: ") + e.what());
    }

    const Json& jorders = need(need(j, "group", "document"), "orders", "group");
    if (!jorders.is_array()) throw SchemaError("group.orders must be an array");
    std::vector<long long> orders;
    for (const Json& o : jorders) {
        long long v = need_int(o, "group order");
        if (v < 1) throw SchemaError("group orders must be positive");
        orders.push_back(v);
    }

    const Json& jgens = need(need(j, "action", "document"), "generators", "action");
    if (!jgens.is_array()) throw SchemaError("action.generators must be an array");
    if (jgens.size() != orders.size())
        throw SchemaError("action needs exactly one generator per group factor");

    // first pass: collect the per-arrow levels to fix a common one
    long long level = 1;
    for (const Json& g : jgens) {
        const Json& ja = need(g, "arrows", "generator");
        if (!ja.is_object()) throw SchemaError("generator.arrows must be an object");
        for (const auto& [name, spec] : ja.items()) {
            (void)name;
            long long den = need_int(need(spec, "scalar_den", "arrow image"), "scalar_den");
            if (den < 1) throw SchemaError("scalar_den must be positive");
            level = std::lcm(level, den);
            if (level > 1000000) throw SchemaError("common scalar level too large");
        }
    }

    std::vector<std::vector<int>> vperm;
    std::vector<std::vector<std::pair<int, long long>>> aperm;
    for (const Json& g : jgens) {
        const Json& jv = need(g, "vertex_perm", "generator");
        if (!jv.is_object()) throw SchemaError("generator.vertex_perm must be an object");
        if (jv.size() != verts.size())
            throw SchemaError("vertex_perm must mention every vertex exactly once");
        std::vector<int> vp(verts.size(), -1);
        std::vector<bool> hit(verts.size(), false);
        for (const auto& [from, to] : jv.items()) {
            int s, t;
            try {
                s = doc.quiver.vertex_index(from);
                t = doc.quiver.vertex_index(need_string(to, "vertex image"));
            } catch (const std::invalid_argument& e) {
                throw SchemaError(std::string("vertex_perm: ") + e.what());
            }
            vp[static_cast<size_t>(s)] = t;
            if (hit[static_cast<size_t>(t)])
                throw SchemaError("vertex_perm is not a bijection: image " + from + " repeated");
            hit[static_cast<size_t>(t)] = true;
        }
        vperm.push_back(std::move(vp));

        const Json& ja = need(g, "arrows", "generator");
        if (ja.size() != static_cast<size_t>(doc.quiver.num_arrows()))
            throw SchemaError("generator.arrows must mention every arrow exactly once");
        std::vector<std::pair<int, long long>> ap(static_cast<size_t>(doc.quiver.num_arrows()),
                                                  {-1, 0});
        std::vector<bool> ahit(ap.size(), false);
        for (const auto& [from, spec] : ja.items()) {
            int s, t;
            try {
                s = doc.quiver.arrow_index(from);
                t = doc.quiver.arrow_index(need_string(need(spec, "to", "arrow image"), "arrow image"));
            } catch (const std::invalid_argument& e) {
                throw SchemaError(std::string("arrows: ") + e.what());
            }
            long long num = need_int(need(spec, "scalar_num", "arrow image"), "scalar_num");
            long long den = need_int(need(spec, "scalar_den", "arrow image"), "scalar_den");
            ap[static_cast<size_t>(s)] = {t, mod_nonneg(mod_nonneg(num, den) * (level / den), level)};
            if (ahit[static_cast<size_t>(t)])
                throw SchemaError("arrow map is not a bijection: image " + from + " repeated");
            ahit[static_cast<size_t>(t)] = true;
        }
        aperm.push_back(std::move(ap));
    }

    doc.action = make_action(doc.quiver, AbelianGroup(orders), level, vperm, aperm);
    return doc;
}

inline InputDocument parse_input(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw SchemaError("input is not valid JSON");
    return parse_input(j);
}

inline Json serialize_input(const InputDocument& doc) {
    const Quiver& q = doc.quiver;
    Json jverts = Json::array();
    for (const std::string& v : q.vertex_names) jverts.push_back(v);
    Json jarrows = Json::array();
    for (const Arrow& a : q.arrows)
        jarrows.push_back({{"id", q.arrow_names[static_cast<size_t>(a.id)]},
                           {"src", q.vertex_names[static_cast<size_t>(a.src)]},
                           {"tgt", q.vertex_names[static_cast<size_t>(a.tgt)]}});
    Json jgens = Json::array();
    for (int k = 0; k < doc.action.group.num_factors(); ++k) {
        Json jv = Json::object();
        for (int v = 0; v < q.num_vertices(); ++v)
            jv[q.vertex_names[static_cast<size_t>(v)]] =
                q.vertex_names[static_cast<size_t>(doc.action.vertex_perm[static_cast<size_t>(k)]
                                                                         [static_cast<size_t>(v)])];
        Json ja = Json::object();
        for (int a = 0; a < q.num_arrows(); ++a) {
            auto [img, e] = doc.action.arrow_perm[static_cast<size_t>(k)][static_cast<size_t>(a)];
            ja[q.arrow_names[static_cast<size_t>(a)]] = {
                {"to", q.arrow_names[static_cast<size_t>(img)]},
                {"scalar_num", e},
                {"scalar_den", doc.action.level}};
        }
        jgens.push_back({{"vertex_perm", jv}, {"arrows", ja}});
    }
    return Json{{"quiver", {{"vertices", jverts}, {"arrows", jarrows}}},
                {"group", {{"orders", doc.action.group.orders}}},
                {"action", {{"generators", jgens}}}};
}

// Check report: named rows with pass/fail/inconclusive status. Wall-clock
// timing never enters the JSON document so that reports are byte-stable.
struct ReportRow {
    std::string name;
    std::string status;  // pass | fail | inconclusive
    std::string witness;
};

struct Report {
    std::string command;
    std::string fixture;
    long long seed = 12345;
    std::vector<ReportRow> rows;

    void add(const std::string& name, bool ok, const std::string& witness = "") {
        rows.push_back({name, ok ? "pass" : "fail", witness});
    }
    void add_inconclusive(const std::string& name, const std::string& witness) {
        rows.push_back({name, "inconclusive", witness});
    }
    void absorb(const ValidationReport& vr, const std::string& prefix = "") {
        for (const CheckResult& c : vr.checks) add(prefix + c.name, c.ok, c.witness);
    }
    bool all_pass() const {
        for (const ReportRow& r : rows)
            if (r.status == "fail") return false;
        return true;
    }
};

inline Json report_to_json(const Report& rep) {
    Json rows = Json::array();
    for (const ReportRow& r : rep.rows)
        rows.push_back({{"name", r.name}, {"status", r.status}, {"witness", r.witness}});
    return Json{{"command", rep.command},
                {"fixture", rep.fixture},
                {"seed", rep.seed},
                {"checks", rows},
                {"ok", rep.all_pass()}};
}

inline std::string report_to_table(const Report& rep) {
    size_t w = 5;
    for (const ReportRow& r : rep.rows) w = std::max(w, r.name.size());
    std::ostringstream os;
    os << "command: " << rep.command << "\n";
    if (!rep.fixture.empty()) os << "fixture: " << rep.fixture << "\n";
    os << "seed: " << rep.seed << "\n";
    for (const ReportRow& r : rep.rows) {
        os << "  " << r.name << std::string(w - r.name.size() + 2, ' ') << r.status;
        if (!r.witness.empty()) os << "  " << r.witness;
        os << "\n";
    }
    os << (rep.all_pass() ? "ALL CHECKS PASS" : "CHECK FAILURES PRESENT") << "\n";
    return os.str();
}

// Representations serialize as dimension vectors plus row-major matrices of
// cyclotomic coefficient polynomials (each entry a list of rational strings).
inline Json representation_to_json(const Representation& r) {
    Json mats = Json::object();
    for (const Arrow& a : r.quiver.arrows) {
        const CycMat& m = r.mats[static_cast<size_t>(a.id)];
        Json rows = Json::array();
        for (int i = 0; i < m.rows; ++i) {
            Json row = Json::array();
            for (int j = 0; j < m.cols; ++j) {
                Json entry = Json::array();
                for (const Rational& c : m.at(i, j).coeffs()) entry.push_back(to_string(c));
                row.push_back(entry);
            }
            rows.push_back(row);
        }
        mats[r.quiver.arrow_names[static_cast<size_t>(a.id)]] = rows;
    }
    return Json{{"dims", r.dims}, {"matrices", mats}};
}

}  // namespace quiverfold
