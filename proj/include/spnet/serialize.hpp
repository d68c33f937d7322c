#pragma once

// JSON / CSV serialization of reports. Requires the vendored nlohmann header
// (vendor/json.hpp) on the include path; nothing else in the library does.
//
// Conventions, relied on by consumers:
//   - exact rationals are always strings "num/den", never floats
//   - every JSON report carries {"version", "config"} at the top level
//   - CSV starts with '#'-prefixed comment lines (version, config, run
//     parameters), then a header row, then data; column orders below are
//     fixed

#include <json.hpp>

#include <iomanip>
#include <sstream>
#include <string>

#include "spnet/model.hpp"
#include "spnet/montecarlo.hpp"
#include "spnet/oracle.hpp"
#include "spnet/version.hpp"

namespace spnet {

using Json = nlohmann::ordered_json;

inline Json model_to_json(const ModelConfig& cfg) {
    Json j;
    j["model"] = model_name(cfg.model);
    if (cfg.p) j["p"] = cfg.p->str();
    if (cfg.saturation_bound() > 0) j["b"] = cfg.saturation_bound();
    return j;
}

inline Json report_envelope(const ModelConfig& cfg) {
    Json j;
    j["version"] = version_string;
    j["config"] = model_to_json(cfg);
    return j;
}

namespace detail {

inline Json pmf_to_json(const std::map<int, BigRat>& pmf) {
    Json rows = Json::array();
    for (const auto& [m, pr] : pmf) {
        Json row;
        row["m"] = m;
        row["prob"] = format_rational(pr);
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string model_comment(const ModelConfig& cfg) {
    std::string s = "# version=";
    s += version_string;
    s += " model=";
    s += model_name(cfg.model);
    if (cfg.p) s += " p=" + cfg.p->str();
    if (cfg.saturation_bound() > 0) s += " b=" + std::to_string(cfg.saturation_bound());
    return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// oracle reports
// ---------------------------------------------------------------------------

inline Json to_json(const OracleReport& rep) {
    Json j = report_envelope(rep.cfg);
    j["n"] = rep.n;
    j["history_count"] = rep.history_count;
    j["total_probability"] = format_rational(rep.total_probability);

    Json tables;
    tables["source_degree"] = detail::pmf_to_json(rep.source_degree);
    tables["sink_degree"] = detail::pmf_to_json(rep.sink_degree);
    tables["leftmost_length"] = detail::pmf_to_json(rep.leftmost_length);
    tables["walk_length"] = detail::pmf_to_json(rep.walk_length);

    Json joint = Json::array();
    for (const auto& [key, pr] : rep.joint_walk_degree) {
        Json row;
        row["length"] = key.first;
        row["degree"] = key.second;
        row["prob"] = format_rational(pr);
        joint.push_back(std::move(row));
    }
    tables["joint_walk_degree"] = std::move(joint);

    Json paths = Json::array();
    for (const auto& [count, pr] : rep.path_count) {
        Json row;
        row["paths"] = count.str();
        row["prob"] = format_rational(pr);
        paths.push_back(std::move(row));
    }
    tables["path_count"] = std::move(paths);
    j["tables"] = std::move(tables);

    Json e;
    e["source_degree"] = format_rational(rep.e_source_degree);
    e["sink_degree"] = format_rational(rep.e_sink_degree);
    e["leftmost_length"] = format_rational(rep.e_leftmost);
    e["walk_length"] = format_rational(rep.e_walk_length);
    e["path_count"] = format_rational(rep.e_paths);
    j["expectations"] = std::move(e);
    return j;
}

// columns: table,m,l,prob,prob_float ('l' set only for the joint table; the
// path-count table puts the count in 'm')
inline std::string to_csv(const OracleReport& rep) {
    std::ostringstream out;
    out << detail::model_comment(rep.cfg) << " n=" << rep.n
        << " histories=" << rep.history_count << "\n";
    out << "table,m,l,prob,prob_float\n";
    out << std::setprecision(17);
    auto table = [&](const char* name, const std::map<int, BigRat>& pmf) {
        for (const auto& [m, pr] : pmf)
            out << name << "," << m << ",," << format_rational(pr) << "," << to_double(pr) << "\n";
    };
    table("source_degree", rep.source_degree);
    table("sink_degree", rep.sink_degree);
    table("leftmost_length", rep.leftmost_length);
    table("walk_length", rep.walk_length);
    for (const auto& [key, pr] : rep.joint_walk_degree)
        out << "joint_walk_degree," << key.first << "," << key.second << ","
            << format_rational(pr) << "," << to_double(pr) << "\n";
    for (const auto& [count, pr] : rep.path_count)
        out << "path_count," << count.str() << ",," << format_rational(pr) << ","
            << to_double(pr) << "\n";
    return out.str();
}

inline Json to_json(const FormulaVerification& ver) {
    Json j = report_envelope(ver.cfg);
    j["n"] = ver.n;
    Json checks = Json::array();
    for (const auto& c : ver.checks) {
        Json row;
        row["name"] = c.name;
        row["pass"] = c.pass;
        row["worst"] = c.worst;
        if (!c.detail.empty()) row["detail"] = c.detail;
        checks.push_back(std::move(row));
    }
    j["checks"] = std::move(checks);
    j["all_pass"] = ver.all_pass();
    return j;
}

// ---------------------------------------------------------------------------
// simulation summaries
// ---------------------------------------------------------------------------

inline Json to_json(const SimSummary& sum) {
    Json j = report_envelope(sum.cfg);
    j["n"] = sum.n;
    j["trials"] = sum.trials;
    j["seed"] = sum.seed;
    j["workers"] = sum.workers;
    Json stats = Json::array();
    for (const auto& s : sum.stats) {
        Json row;
        row["stat"] = stat_name(s.stat);
        row["exponent"] = s.exponent;
        row["mean"] = s.mean;
        row["variance"] = s.variance;
        row["min"] = s.min_value;
        row["max"] = s.max_value;
        Json moments = Json::array();
        for (int r = 1; r <= 3; ++r) {
            Json m;
            m["r"] = r;
            m["value"] = s.scaled_moment(r, sum.trials);
            m["se"] = s.scaled_moment_se(r, sum.trials);
            moments.push_back(std::move(m));
        }
        row["scaled_moments"] = std::move(moments);
        Json hist = Json::array();
        for (const auto& [bin, count] : s.histogram) {
            Json h;
            h["x"] = static_cast<double>(bin) / s.bin_scale;
            h["count"] = count;
            hist.push_back(std::move(h));
        }
        row["histogram"] = std::move(hist);
        stats.push_back(std::move(row));
    }
    j["stats"] = std::move(stats);
    return j;
}

// one row per histogram bin; columns: stat,exponent,x,count,frequency
inline std::string to_csv(const SimSummary& sum) {
    std::ostringstream out;
    out << detail::model_comment(sum.cfg) << " n=" << sum.n << " trials=" << sum.trials
        << " seed=" << sum.seed << " workers=" << sum.workers << "\n";
    out << "stat,exponent,x,count,frequency\n";
    out << std::setprecision(17);
    for (const auto& s : sum.stats)
        for (const auto& [bin, count] : s.histogram)
            out << stat_name(s.stat) << "," << s.exponent << ","
                << static_cast<double>(bin) / s.bin_scale << "," << count << ","
                << static_cast<double>(count) / static_cast<double>(sum.trials) << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// limit-law comparisons
// ---------------------------------------------------------------------------

inline Json to_json(const LimitComparison& cmp, const SimSummary& sum) {
    Json j = report_envelope(sum.cfg);
    j["n"] = sum.n;
    j["trials"] = sum.trials;
    j["seed"] = sum.seed;
    j["law"] = limit_law_name(cmp.law);
    j["stat"] = stat_name(cmp.stat);
    j["exponent"] = cmp.exponent;
    Json moments = Json::array();
    for (const auto& m : cmp.moments) {
        Json row;
        row["r"] = m.r;
        row["sample"] = m.sample;
        row["limit"] = m.limit;
        row["se"] = m.se;
        row["z"] = m.z;
        moments.push_back(std::move(row));
    }
    j["moments"] = std::move(moments);
    if (!cmp.overlay.empty()) {
        Json overlay = Json::array();
        for (const auto& row : cmp.overlay) {
            Json o;
            o["x"] = row.x;
            o["width"] = row.width;
            o["empirical"] = row.empirical;
            o["expected"] = row.expected;
            o["z"] = row.z;
            overlay.push_back(std::move(o));
        }
        j["overlay"] = std::move(overlay);
    }
    return j;
}

// moment rows then overlay rows; columns: kind,x,sample,expected,se,z
// (moment rows put r in 'x' and the moment se in 'se'; overlay rows leave
// 'se' empty and carry the cell density in 'sample'/'expected')
inline std::string to_csv(const LimitComparison& cmp, const SimSummary& sum) {
    std::ostringstream out;
    out << detail::model_comment(sum.cfg) << " n=" << sum.n << " trials=" << sum.trials
        << " seed=" << sum.seed << " law=" << limit_law_name(cmp.law)
        << " stat=" << stat_name(cmp.stat) << " exponent=" << cmp.exponent << "\n";
    out << "kind,x,sample,expected,se,z\n";
    out << std::setprecision(17);
    for (const auto& m : cmp.moments)
        out << "moment," << m.r << "," << m.sample << "," << m.limit << "," << m.se << ","
            << m.z << "\n";
    for (const auto& row : cmp.overlay)
        out << "overlay," << row.x << "," << row.empirical << "," << row.expected << ",,"
            << row.z << "\n";
    return out.str();
}

}  // namespace spnet
