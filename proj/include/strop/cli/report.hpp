#pragma once

// Deterministic reports: a '#' metadata block followed by named TSV
// sections, or the same content as JSON.

#include <ostream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "json.hpp"

namespace strop::cli {

inline constexpr const char* kToolVersion = "0.1.0";

inline std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

struct Section {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

struct Report {
    std::vector<std::vector<std::string>> meta;  // key, value, ...
    std::vector<Section> sections;

    void set(std::vector<std::string> entry) { meta.push_back(std::move(entry)); }

    Section& section(const std::string& name, std::vector<std::string> columns) {
        sections.push_back({name, std::move(columns), {}});
        return sections.back();
    }

    void write_tsv(std::ostream& os) const {
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "\t" : "") << cells[i];
            os << "\n";
        };
        for (const auto& m : meta) {
            os << "# ";
            line(m);
        }
        for (const auto& s : sections) {
            os << "# section\t" << s.name << "\n";
            line(s.columns);
            for (const auto& r : s.rows) line(r);
        }
    }

    void write_json(std::ostream& os) const {
        nlohmann::ordered_json j;
        nlohmann::ordered_json m = nlohmann::ordered_json::array();
        for (const auto& e : meta) m.push_back(e);
        j["meta"] = m;
        nlohmann::ordered_json secs = nlohmann::ordered_json::array();
        for (const auto& s : sections) {
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            for (const auto& r : s.rows) {
                nlohmann::ordered_json row;
                for (std::size_t i = 0; i < s.columns.size() && i < r.size(); ++i) row[s.columns[i]] = r[i];
                rows.push_back(row);
            }
            secs.push_back({{"name", s.name}, {"columns", s.columns}, {"rows", rows}});
        }
        j["sections"] = secs;
        os << j.dump(2) << "\n";
    }
};

} // namespace strop::cli
