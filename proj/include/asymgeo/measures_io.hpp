#pragma once

// Measure / RandomVariable file formats.
//
//   JSON  {"space": ["a", "b"], "weights": [0.5, 0.5]}   (random variables use "values")
//   CSV   one "label,weight" row per outcome, optional header row
//
// Extra JSON keys are ignored, so solver outputs that embed "space" and
// "weights" re-parse as measures.

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "measures.hpp"

namespace asymgeo {

enum class FileFormat { json, csv };

struct CsvOptions
{
    bool header = false;
};

/// Shortest decimal string that parses back to the same double.
inline std::string shortest_repr(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{})
        throw Error("shortest_repr: conversion failed");
    return {buf, ptr};
}

inline FileFormat format_from_path(const std::string& path)
{
    auto dot = path.rfind('.');
    if (dot != std::string::npos) {
        std::string ext = path.substr(dot + 1);
        for (auto& c : ext)
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (ext == "csv")
            return FileFormat::csv;
    }
    return FileFormat::json;
}

namespace detail {

struct LabeledColumn
{
    std::vector<std::string> labels;
    std::vector<double> numbers;
};

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline LabeledColumn parse_json(const std::string& text, const char* key)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("space") || !j.contains(key))
        throw ParseError(std::string("JSON must be an object with \"space\" and \"") + key + "\"");
    const auto& space = j["space"];
    const auto& nums = j[key];
    if (!space.is_array() || !nums.is_array() || space.size() != nums.size())
        throw ParseError(std::string("\"space\" and \"") + key + "\" must be arrays of equal length");
    LabeledColumn out;
    for (const auto& l : space) {
        if (!l.is_string())
            throw ParseError("space labels must be strings");
        out.labels.push_back(l.get<std::string>());
    }
    for (const auto& n : nums) {
        if (!n.is_number())
            throw ParseError(std::string("\"") + key + "\" entries must be numbers");
        out.numbers.push_back(n.get<double>());
    }
    return out;
}

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline double parse_number(std::string_view s)
{
    s = trim(s);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError("not a number: '" + std::string(s) + "'");
    return v;
}

inline LabeledColumn parse_csv(const std::string& text, const CsvOptions& opts)
{
    LabeledColumn out;
    std::istringstream in(text);
    std::string line;
    bool skip = opts.header;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto view = trim(line);
        if (view.empty())
            continue;
        if (skip) {
            skip = false;
            continue;
        }
        auto comma = view.rfind(',');
        if (comma == std::string_view::npos)
            throw ParseError("CSV line " + std::to_string(lineno) + ": expected 'label,number'");
        out.labels.emplace_back(trim(view.substr(0, comma)));
        out.numbers.push_back(parse_number(view.substr(comma + 1)));
    }
    if (out.labels.empty())
        throw ParseError("CSV contains no rows");
    return out;
}

inline LabeledColumn load_column(const std::string& path, FileFormat format, const char* key,
                                 const CsvOptions& csv)
{
    const auto text = read_file(path);
    return format == FileFormat::json ? parse_json(text, key) : parse_csv(text, csv);
}

/// Reorders a parsed column onto an expected space.
inline std::vector<double> align(const LabeledColumn& col, const SampleSpace& space)
{
    if (col.labels.size() != space.size())
        throw UnknownLabel("file has " + std::to_string(col.labels.size()) + " outcomes, expected "
                           + std::to_string(space.size()));
    std::vector<double> out(space.size());
    std::vector<bool> filled(space.size(), false);
    for (std::size_t k = 0; k < col.labels.size(); ++k) {
        auto idx = space.find(col.labels[k]);
        if (idx < 0)
            throw UnknownLabel("unknown label '" + col.labels[k] + "'");
        if (filled[static_cast<std::size_t>(idx)])
            throw ParseError("duplicate label '" + col.labels[k] + "'");
        filled[static_cast<std::size_t>(idx)] = true;
        out[static_cast<std::size_t>(idx)] = col.numbers[k];
    }
    return out;
}

inline SpacePtr space_from(const LabeledColumn& col)
{
    try {
        return make_space(col.labels);
    }
    catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

inline void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write '" + path + "'");
    out << text;
}

} // namespace detail

/// Loads a measure. When `space` is given the file's labels must belong to it
/// and the weights are reordered onto it.
inline Measure load_measure(const std::string& path, FileFormat format, const SpacePtr& space = nullptr,
                            const CsvOptions& csv = {})
{
    auto col = detail::load_column(path, format, "weights", csv);
    for (std::size_t i = 0; i < col.numbers.size(); ++i)
        if (col.numbers[i] < 0.0)
            throw NegativeWeight("negative weight for '" + col.labels[i] + "'");
    if (space)
        return {space, detail::align(col, *space)};
    auto sp = detail::space_from(col);
    return {sp, std::move(col.numbers)};
}

inline RandomVariable load_random_variable(const std::string& path, FileFormat format,
                                           const SpacePtr& space = nullptr, const CsvOptions& csv = {})
{
    auto col = detail::load_column(path, format, "values", csv);
    if (space)
        return {space, detail::align(col, *space)};
    auto sp = detail::space_from(col);
    try {
        return {sp, std::move(col.numbers)};
    }
    catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

inline nlohmann::json to_json(const Measure& y)
{
    return {{"space", y.space()->labels()}, {"weights", y.weight_vector()}};
}

inline nlohmann::json to_json(const RandomVariable& x)
{
    return {{"space", x.space()->labels()}, {"values", x.value_vector()}};
}

inline std::string to_csv(const SampleSpace& space, std::span<const double> numbers, const char* header)
{
    std::string out;
    if (header)
        out += std::string("label,") + header + "\n";
    for (std::size_t i = 0; i < numbers.size(); ++i)
        out += space.label(i) + "," + shortest_repr(numbers[i]) + "\n";
    return out;
}

inline void save_measure(const Measure& y, const std::string& path, FileFormat format,
                         const CsvOptions& csv = {})
{
    if (format == FileFormat::json)
        detail::write_file(path, to_json(y).dump() + "\n");
    else
        detail::write_file(path, to_csv(*y.space(), y.weights(), csv.header ? "weight" : nullptr));
}

inline void save_random_variable(const RandomVariable& x, const std::string& path, FileFormat format,
                                 const CsvOptions& csv = {})
{
    if (format == FileFormat::json)
        detail::write_file(path, to_json(x).dump() + "\n");
    else
        detail::write_file(path, to_csv(*x.space(), x.values(), csv.header ? "value" : nullptr));
}

} // namespace asymgeo
