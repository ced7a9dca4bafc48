#include "iso/report.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace iso {

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

namespace {

void count_results(const nlohmann::json& node, long long& pass, long long& fail) {
    if (node.is_object()) {
        for (auto it = node.begin(); it != node.end(); ++it) {
            if (it.key() == "pass" && it.value().is_boolean()) {
                (it.value().get<bool>() ? pass : fail)++;
            } else if (it.key() == "status" && it.value().is_string()) {
                std::string s = it.value().get<std::string>();
                (s == "pass" || s == "ok" ? pass : fail)++;
            } else {
                count_results(it.value(), pass, fail);
            }
        }
    } else if (node.is_array()) {
        for (const auto& e : node) count_results(e, pass, fail);
    }
}

}  // namespace

nlohmann::json make_report(const std::string& subcommand, const nlohmann::json& params,
                           const nlohmann::json& records, long long elapsed_ms) {
    long long pass = 0, fail = 0;
    count_results(records, pass, fail);
    nlohmann::json rpt;
    rpt["tool"] = "isolab";
    rpt["version"] = "0.1.0";
    rpt["subcommand"] = subcommand;
    rpt["params"] = params;
    rpt["manifest_hash"] = fnv1a_hex(subcommand + params.dump());
    rpt["records"] = records;
    rpt["rollup"] = {{"pass", pass}, {"fail", fail}, {"all_passed", fail == 0}};
    rpt["timing"] = {{"elapsed_ms", elapsed_ms}};
    return rpt;
}

bool report_passed(const nlohmann::json& report) {
    return report.contains("rollup") && report["rollup"].value("all_passed", false);
}

std::string pretty_table(const nlohmann::json& rows, const std::vector<std::string>& columns) {
    auto cell = [](const nlohmann::json& row, const std::string& col) -> std::string {
        if (!row.is_object() || !row.contains(col)) return "-";
        const nlohmann::json& v = row.at(col);
        return v.is_string() ? v.get<std::string>() : v.dump();
    };
    std::vector<std::size_t> width(columns.size());
    for (std::size_t i = 0; i < columns.size(); ++i) width[i] = columns[i].size();
    for (const auto& row : rows)
        for (std::size_t i = 0; i < columns.size(); ++i)
            width[i] = std::max(width[i], cell(row, columns[i]).size());
    std::ostringstream os;
    auto emit = [&](const std::vector<std::string>& vals) {
        for (std::size_t i = 0; i < vals.size(); ++i) {
            os << vals[i] << std::string(width[i] - vals[i].size(), ' ');
            os << (i + 1 < vals.size() ? "  " : "");
        }
        os << "\n";
    };
    emit(columns);
    std::vector<std::string> rule;
    for (std::size_t w : width) rule.push_back(std::string(w, '-'));
    emit(rule);
    for (const auto& row : rows) {
        std::vector<std::string> vals;
        for (const auto& c : columns) vals.push_back(cell(row, c));
        emit(vals);
    }
    return os.str();
}

std::string report_path(const std::string& subcommand, const std::string& hash,
                        const std::string& out_flag) {
    if (!out_flag.empty()) return out_flag;
    const char* dir = std::getenv("ISOLAB_OUT_DIR");
    std::string base = dir && *dir ? dir : ".";
    std::string sub = subcommand;
    for (char& c : sub)
        if (c == ' ') c = '-';
    return base + "/" + sub + "-" + hash + ".json";
}

void write_report(const nlohmann::json& report, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open report file: " + path);
    f << report.dump(2) << "\n";
}

}  // namespace iso
