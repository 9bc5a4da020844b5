#include "unialign/event_log.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "unialign/error.hpp"
#include "xml.hpp"

namespace unialign {

namespace {

std::string concept_name(const xml::Element& e) {
  for (const auto& attr : e.children) {
    if (attr->name != "string") continue;
    const std::string* key = attr->attribute("key");
    const std::string* value = attr->attribute("value");
    if (key && value && *key == "concept:name") return *value;
  }
  return {};
}

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(xml::trim(field));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw ParseError("unterminated quoted CSV field", line_no, line.size() + 1);
  fields.push_back(xml::trim(field));
  return fields;
}

}  // namespace

EventLog parse_xes(std::string_view document, std::string source_name) {
  auto root = xml::parse(document);
  if (root->name != "log") throw ParseError("XES document root must be <log>", root->line, root->column);
  EventLog log;
  log.source_name = std::move(source_name);
  std::size_t index = 0;
  for (const xml::Element* t : root->children_named("trace")) {
    Trace trace;
    trace.case_id = concept_name(*t);
    if (trace.case_id.empty()) trace.case_id = "case" + std::to_string(index);
    for (const xml::Element* e : t->children_named("event")) {
      std::string activity = concept_name(*e);
      if (activity.empty()) {
        ++log.skipped_events;
        continue;
      }
      trace.activities.push_back(std::move(activity));
    }
    log.traces.push_back(std::move(trace));
    ++index;
  }
  return log;
}

EventLog parse_csv_log(std::string_view document, std::string source_name) {
  std::istringstream in{std::string(document)};
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!xml::trim(line).empty()) {
      header = split_csv_line(line, line_no);
      break;
    }
  }
  auto column = [&](const char* name) -> std::size_t {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ParseError(std::string("CSV log header lacks column '") + name + "'", line_no, 1);
    return static_cast<std::size_t>(it - header.begin());
  };
  EventLog log;
  log.source_name = std::move(source_name);
  if (header.empty()) return log;
  const std::size_t case_col = column("case_id");
  const std::size_t activity_col = column("activity");
  const std::size_t order_col = column("order");
  const std::size_t needed = std::max({case_col, activity_col, order_col}) + 1;

  struct Row {
    long long order;
    std::size_t seq;
    std::string activity;
  };
  std::unordered_map<std::string, std::size_t> case_pos;
  std::vector<std::string> case_ids;
  std::vector<std::vector<Row>> rows;
  std::size_t seq = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (xml::trim(line).empty()) continue;
    auto fields = split_csv_line(line, line_no);
    if (fields.size() < needed) throw ParseError("CSV row has too few columns", line_no, 1);
    long long order = 0;
    try {
      std::size_t used = 0;
      order = std::stoll(fields[order_col], &used);
      if (used != fields[order_col].size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ParseError("CSV order column is not an integer: '" + fields[order_col] + "'", line_no, 1);
    }
    auto [it, inserted] = case_pos.emplace(fields[case_col], case_ids.size());
    if (inserted) {
      case_ids.push_back(fields[case_col]);
      rows.emplace_back();
    }
    if (fields[activity_col].empty()) {
      ++log.skipped_events;
      continue;
    }
    rows[it->second].push_back({order, seq++, fields[activity_col]});
  }
  for (std::size_t c = 0; c < case_ids.size(); ++c) {
    auto& events = rows[c];
    std::stable_sort(events.begin(), events.end(), [](const Row& a, const Row& b) { return a.order < b.order; });
    Trace trace{case_ids[c], {}};
    for (auto& r : events) trace.activities.push_back(std::move(r.activity));
    log.traces.push_back(std::move(trace));
  }
  return log;
}

EventLog read_log_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open log file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (path.extension() == ".csv") return parse_csv_log(buffer.str(), path.filename().string());
  return parse_xes(buffer.str(), path.filename().string());
}

std::string write_xes(const EventLog& log) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<log xes.version=\"1.0\" xmlns=\"http://www.xes-standard.org/\">\n";
  out << "  <extension name=\"Concept\" prefix=\"concept\" uri=\"http://www.xes-standard.org/concept.xesext\"/>\n";
  for (const Trace& t : log.traces) {
    out << "  <trace>\n";
    out << "    <string key=\"concept:name\" value=\"" << xml::escape(t.case_id) << "\"/>\n";
    for (const std::string& a : t.activities) {
      out << "    <event><string key=\"concept:name\" value=\"" << xml::escape(a) << "\"/></event>\n";
    }
    out << "  </trace>\n";
  }
  out << "</log>\n";
  return out.str();
}

Trace parse_trace_spec(std::string_view spec, std::string case_id) {
  Trace trace{std::move(case_id), {}};
  const std::string text = xml::trim(spec);
  if (text.empty()) return trace;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    std::string activity = xml::trim(std::string_view(text).substr(start, comma - start));
    if (activity.empty()) throw InvalidInput("empty activity in trace specification '" + text + "'");
    trace.activities.push_back(std::move(activity));
    start = comma + 1;
  }
  return trace;
}

}  // namespace unialign
