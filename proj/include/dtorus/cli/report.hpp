#pragma once

#include "json.hpp"

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

namespace dtorus::cli {

using Json = nlohmann::ordered_json;

/*
 * Output of one command: {command, params, rows: [...], summary}.  Rows are
 * flat objects; exact integers are decimal strings.  Array or object cells
 * only appear in JSON and are dropped by the CSV and text renderers.
 */
struct Report {
    std::string command;
    Json params = Json::object();
    std::vector<Json> rows;
    Json summary = Json::object();

    int exit_code() const { return summary.value("exit_code", 0); }

    Json to_json() const
    {
        Json j = Json::object();
        j["command"] = command;
        j["params"] = params;
        j["rows"] = Json::array();
        for (const auto& r : rows)
            j["rows"].push_back(r);
        j["summary"] = summary;
        return j;
    }

    static Report from_json(const Json& j)
    {
        Report r;
        r.command = j.at("command").get<std::string>();
        r.params = j.at("params");
        for (const auto& row : j.at("rows"))
            r.rows.push_back(row);
        r.summary = j.at("summary");
        return r;
    }

    friend bool operator==(const Report&, const Report&) = default;
};

namespace detail {

inline bool is_scalar(const Json& v) { return !v.is_array() && !v.is_object(); }

inline std::string cell_text(const Json& v)
{
    if (v.is_null())
        return "";
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

/// Scalar columns in first-seen order across all rows.
inline std::vector<std::string> columns(const std::vector<Json>& rows)
{
    std::vector<std::string> cols;
    for (const auto& row : rows) {
        for (const auto& [key, value] : row.items()) {
            if (!is_scalar(value))
                continue;
            bool seen = false;
            for (const auto& c : cols)
                seen = seen || c == key;
            if (!seen)
                cols.push_back(key);
        }
    }
    return cols;
}

inline std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

} // namespace detail

inline std::string render_json(const Report& r) { return r.to_json().dump(2) + "\n"; }

inline std::string render_csv(const Report& r)
{
    const auto cols = detail::columns(r.rows);
    std::ostringstream out;
    for (std::size_t i = 0; i < cols.size(); ++i)
        out << (i ? "," : "") << detail::csv_escape(cols[i]);
    out << "\n";
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            const auto it = row.find(cols[i]);
            out << (i ? "," : "") << (it == row.end() ? "" : detail::csv_escape(detail::cell_text(*it)));
        }
        out << "\n";
    }
    return out.str();
}

/// Left-aligned columns separated by " | ", then the scalar summary entries.
inline std::string render_text(const Report& r)
{
    const auto cols = detail::columns(r.rows);
    std::vector<std::size_t> width(cols.size());
    std::vector<std::vector<std::string>> cells;
    for (std::size_t i = 0; i < cols.size(); ++i)
        width[i] = cols[i].size();
    for (const auto& row : r.rows) {
        std::vector<std::string> line;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            const auto it = row.find(cols[i]);
            line.push_back(it == row.end() ? "" : detail::cell_text(*it));
            width[i] = std::max(width[i], line.back().size());
        }
        cells.push_back(std::move(line));
    }
    std::ostringstream out;
    auto emit = [&](const std::vector<std::string>& line) {
        std::string s;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (i)
                s += " | ";
            s += line[i];
            if (i + 1 < line.size())
                s.append(width[i] - line[i].size(), ' ');
        }
        while (!s.empty() && s.back() == ' ')
            s.pop_back();
        out << s << "\n";
    };
    if (!cols.empty()) {
        emit(cols);
        std::string rule;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (i)
                rule += "-+-";
            rule.append(width[i], '-');
        }
        out << rule << "\n";
        for (const auto& line : cells)
            emit(line);
    }
    for (const auto& [key, value] : r.summary.items()) {
        if (value.is_array()) {
            for (const auto& item : value)
                out << key << ": " << detail::cell_text(item) << "\n";
        } else if (detail::is_scalar(value)) {
            out << key << ": " << detail::cell_text(value) << "\n";
        }
    }
    return out.str();
}

} // namespace dtorus::cli
