#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace techcomp {

/// Reads one CSV record (possibly spanning lines inside quoted fields).
/// Returns false at end of input. Handles RFC-style double-quote escaping
/// and trailing \r.
inline bool read_csv_row(std::istream& in, std::vector<std::string>& out) {
  out.clear();
  std::string field;
  bool quoted = false;
  bool any = false;
  int c;
  while ((c = in.get()) != EOF) {
    any = true;
    char ch = static_cast<char>(c);
    if (quoted) {
      if (ch == '"') {
        if (in.peek() == '"') {
          field.push_back('"');
          in.get();
        } else {
          quoted = false;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n') {
      if (!field.empty() && field.back() == '\r') field.pop_back();
      out.push_back(std::move(field));
      return true;
    } else {
      field.push_back(ch);
    }
  }
  if (!any) return false;
  if (!field.empty() && field.back() == '\r') field.pop_back();
  out.push_back(std::move(field));
  return true;
}

/// Splits a delimited list, dropping empty and whitespace-only items.
inline std::vector<std::string> split_list(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    std::string_view item = s.substr(start, end - start);
    while (!item.empty() && (item.front() == ' ' || item.front() == '\t'))
      item.remove_prefix(1);
    while (!item.empty() && (item.back() == ' ' || item.back() == '\t'))
      item.remove_suffix(1);
    if (!item.empty()) out.emplace_back(item);
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == sep) {
      flush(i);
      start = i + 1;
    }
  }
  flush(s.size());
  return out;
}

}  // namespace techcomp
