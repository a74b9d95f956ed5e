#include "swf/cli/render.hpp"

#include <sstream>

namespace swf::cli {

std::optional<Format> format_from_string(const std::string& s)
{
    if (s == "md") return Format::md;
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    return std::nullopt;
}

Result eighths_json(Eighths e)
{
    Result j;
    j["eighths"] = e.value;
    j["value"] = e.to_string();
    return j;
}

namespace {

bool is_eighths(const Result& v)
{
    return v.is_object() && v.contains("eighths") && v.contains("value");
}

// Human text of a scalar cell; unknown values print as "?".
std::string text(const Result& v)
{
    if (v.is_null()) return "?";
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (is_eighths(v)) return v.at("value").get<std::string>();
    return v.dump();
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string md_cell(const std::string& s)
{
    std::string out;
    for (char c : s) {
        if (c == '|') out += '\\';
        out += c;
    }
    return out;
}

void md_row(std::ostringstream& o, const std::vector<std::string>& cells)
{
    o << "|";
    for (const auto& c : cells) o << " " << md_cell(c) << " |";
    o << "\n";
}

std::string render_md(const Result& r)
{
    std::ostringstream o;
    o << "# swfcalc " << r.at("command").get<std::string>() << "\n";
    const auto& summary = r.at("summary");
    if (!summary.empty()) {
        o << "\n";
        md_row(o, {"quantity", "value"});
        md_row(o, {"---", "---"});
        for (const auto& [k, v] : summary.items()) md_row(o, {k, text(v)});
    }
    for (const auto& t : r.at("tables")) {
        o << "\n## " << t.at("title").get<std::string>() << "\n\n";
        std::vector<std::string> head;
        std::vector<std::string> rule;
        for (const auto& c : t.at("columns")) {
            head.push_back(c.get<std::string>());
            rule.push_back("---");
        }
        md_row(o, head);
        md_row(o, rule);
        for (const auto& row : t.at("rows")) {
            std::vector<std::string> cells;
            for (const auto& v : row) cells.push_back(text(v));
            md_row(o, cells);
        }
    }
    const auto& notes = r.at("notes");
    if (!notes.empty()) {
        o << "\n## Notes\n\n";
        for (const auto& n : notes) o << "- " << n.get<std::string>() << "\n";
    }
    return o.str();
}

std::string render_csv(const Result& r)
{
    std::ostringstream o;
    const auto& summary = r.at("summary");
    const auto& tables = r.at("tables");
    const bool single = summary.empty() && tables.size() == 1;
    bool first = true;
    auto block = [&]() {
        if (!first) o << "\n";
        first = false;
    };
    if (!summary.empty()) {
        block();
        o << "key,value\n";
        for (const auto& [k, v] : summary.items()) o << csv_field(k) << "," << csv_field(text(v)) << "\n";
    }
    for (const auto& t : tables) {
        block();
        if (!single) o << "# " << t.at("name").get<std::string>() << "\n";
        bool lead = true;
        for (const auto& c : t.at("columns")) {
            o << (lead ? "" : ",") << csv_field(c.get<std::string>());
            lead = false;
        }
        o << "\n";
        for (const auto& row : t.at("rows")) {
            lead = true;
            for (const auto& v : row) {
                o << (lead ? "" : ",") << csv_field(text(v));
                lead = false;
            }
            o << "\n";
        }
    }
    return o.str();
}

} // namespace

std::string render(const Result& r, Format f)
{
    switch (f) {
    case Format::json: return r.dump(2) + "\n";
    case Format::csv: return render_csv(r);
    case Format::md: return render_md(r);
    }
    return {};
}

} // namespace swf::cli
