#include "tmjc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace tmjc {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

// '#'-prefixed header block recording the resolved run configuration.
void write_config_header(std::ostringstream& out, const Json& config) {
    for (const auto& [key, val] : config.items())
        out << "# " << key << " = " << (val.is_string() ? val.get<std::string>() : val.dump())
            << '\n';
}

std::string column_name(const BasisState& s) {
    std::string name = "p_" + to_string(s);
    for (char& c : name)
        if (c == ',')
            c = '_';
    return name;
}

} // namespace

std::string scan_to_csv(const ScanResult& r, const Json& config) {
    std::ostringstream out;
    write_config_header(out, config);
    out << "delta1,delta2,max_occupation,t_at_max,degenerate_vicinity\n";
    const std::size_t n2 = r.cols();
    for (std::size_t i1 = 0; i1 < r.grid.delta1_values.size(); ++i1) {
        for (std::size_t i2 = 0; i2 < n2; ++i2) {
            out << format_double(r.grid.delta1_values[i1]) << ','
                << format_double(r.grid.delta2_values[i2]) << ','
                << format_double(r.max_at(i1, i2)) << ','
                << format_double(r.time_at(i1, i2)) << ','
                << int(r.degenerate_vicinity[i1 * n2 + i2]) << '\n';
        }
    }
    return out.str();
}

Json scan_to_json(const ScanResult& r, const Json& config) {
    Json j;
    j["config"] = config;
    j["delta1_values"] = r.grid.delta1_values;
    j["delta2_values"] = r.grid.delta2_values;
    const std::size_t n2 = r.cols();
    Json occ = Json::array(), tmx = Json::array(), deg = Json::array();
    for (std::size_t i1 = 0; i1 < r.grid.delta1_values.size(); ++i1) {
        Json row_occ = Json::array(), row_tmx = Json::array(), row_deg = Json::array();
        for (std::size_t i2 = 0; i2 < n2; ++i2) {
            row_occ.push_back(r.max_at(i1, i2));
            row_tmx.push_back(r.time_at(i1, i2));
            row_deg.push_back(r.degenerate_vicinity[i1 * n2 + i2] != 0);
        }
        occ.push_back(std::move(row_occ));
        tmx.push_back(std::move(row_tmx));
        deg.push_back(std::move(row_deg));
    }
    j["max_occupation"] = std::move(occ);
    j["argmax_time"] = std::move(tmx);
    j["degenerate_vicinity"] = std::move(deg);
    return j;
}

std::string trace_to_csv(const OccupationTrace& tr, const Json& config) {
    std::ostringstream out;
    write_config_header(out, config);
    out << "t,p_excited,n_mode1,n_mode2";
    for (const BasisState& s : tr.tracked_states)
        out << ',' << column_name(s);
    out << '\n';
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        out << format_double(tr.times[i]) << ',' << format_double(tr.p_excited[i]) << ','
            << format_double(tr.n_mode1[i]) << ',' << format_double(tr.n_mode2[i]);
        for (const auto& col : tr.tracked)
            out << ',' << format_double(col[i]);
        out << '\n';
    }
    return out.str();
}

Json trace_to_json(const OccupationTrace& tr, const Json& config) {
    Json j;
    j["config"] = config;
    j["times"] = tr.times;
    j["p_excited"] = tr.p_excited;
    j["n_mode1"] = tr.n_mode1;
    j["n_mode2"] = tr.n_mode2;
    Json tracked = Json::object();
    for (std::size_t k = 0; k < tr.tracked_states.size(); ++k)
        tracked[to_string(tr.tracked_states[k])] = tr.tracked[k];
    j["tracked"] = std::move(tracked);
    return j;
}

std::string trace_to_csv(const TwoLevelTrace& tr, const Json& config) {
    std::ostringstream out;
    write_config_header(out, config);
    out << "t,p_excited\n";
    for (std::size_t i = 0; i < tr.times.size(); ++i)
        out << format_double(tr.times[i]) << ',' << format_double(tr.p_excited[i]) << '\n';
    return out.str();
}

Json trace_to_json(const TwoLevelTrace& tr, const Json& config) {
    Json j;
    j["config"] = config;
    j["times"] = tr.times;
    j["p_excited"] = tr.p_excited;
    return j;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out)
        throw IoError("failed while writing '" + path + "'");
}

} // namespace tmjc
