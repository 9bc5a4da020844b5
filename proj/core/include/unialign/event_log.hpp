#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "unialign/petri_net.hpp"

namespace unialign {

struct EventLog {
  std::vector<Trace> traces;
  std::string source_name;
  /// Events dropped because they had no concept:name.
  std::size_t skipped_events = 0;
};

/// Reads an XES log: one trace per <trace>, activity from the event's
/// <string key="concept:name">. Other attributes are ignored.
EventLog parse_xes(std::string_view document, std::string source_name = {});

/// CSV log with a header containing case_id, activity and order columns
/// (any column order, extra columns ignored). Cases appear in order of first
/// occurrence; events within a case are sorted by the integer `order` column.
EventLog parse_csv_log(std::string_view document, std::string source_name = {});

/// Dispatches on the extension: .xes, .csv; anything else is tried as XES.
EventLog read_log_file(const std::filesystem::path& path);

std::string write_xes(const EventLog& log);

/// Parses "a,b,e" (or "" for the empty trace) into a trace.
Trace parse_trace_spec(std::string_view spec, std::string case_id = "trace");

}  // namespace unialign
