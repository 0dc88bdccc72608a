#pragma once

// Deterministic report output: an insertion-ordered JSON value and a small
// CSV writer, both printing numbers as shortest round-trip decimals via
// std::to_chars. Byte-identical output for identical inputs is part of the
// contract (no timestamps, no locale, no map reordering).

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gbv/errors.hpp"

namespace gbv {

/// Shortest decimal that round-trips the double; integral values keep a
/// trailing ".0" so the JSON type stays visibly floating-point.
inline std::string format_double(double v) {
  if (!std::isfinite(v)) return v > 0 ? "1e9999" : (v < 0 ? "-1e9999" : "null");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, res.ptr);
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
    s += ".0";
  return s;
}

/// Insertion-ordered JSON tree for reports.
class ReportValue {
 public:
  ReportValue() : data_(nullptr) {}

  static ReportValue object() {
    ReportValue v;
    v.data_ = Object{};
    return v;
  }
  static ReportValue array() {
    ReportValue v;
    v.data_ = Array{};
    return v;
  }
  static ReportValue number(double d) {
    ReportValue v;
    v.data_ = d;
    return v;
  }
  static ReportValue integer(std::int64_t i) {
    ReportValue v;
    v.data_ = i;
    return v;
  }
  static ReportValue boolean(bool b) {
    ReportValue v;
    v.data_ = b;
    return v;
  }
  static ReportValue string(std::string s) {
    ReportValue v;
    v.data_ = std::move(s);
    return v;
  }
  static ReportValue null() { return ReportValue(); }

  ReportValue& set(const std::string& key, ReportValue v) {
    auto& obj = std::get<Object>(data_);
    obj.entries.push_back({key, std::make_shared<ReportValue>(std::move(v))});
    return *this;
  }
  ReportValue& push(ReportValue v) {
    std::get<Array>(data_).items.push_back(std::make_shared<ReportValue>(std::move(v)));
    return *this;
  }

  std::string dump(int indent = 2) const {
    std::string out;
    write(out, indent, 0);
    out += '\n';
    return out;
  }

 private:
  struct Object {
    std::vector<std::pair<std::string, std::shared_ptr<ReportValue>>> entries;
  };
  struct Array {
    std::vector<std::shared_ptr<ReportValue>> items;
  };

  static void escape(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
      switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out += buf;
          } else {
            out += c;
          }
      }
    }
    out += '"';
  }

  void write(std::string& out, int indent, int depth) const {
    const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    const std::string pad_close(static_cast<std::size_t>(indent) * depth, ' ');
    if (std::holds_alternative<std::nullptr_t>(data_)) {
      out += "null";
    } else if (const auto* b = std::get_if<bool>(&data_)) {
      out += *b ? "true" : "false";
    } else if (const auto* i = std::get_if<std::int64_t>(&data_)) {
      char buf[32];
      const auto res = std::to_chars(buf, buf + sizeof(buf), *i);
      out.append(buf, res.ptr);
    } else if (const auto* d = std::get_if<double>(&data_)) {
      const std::string s = format_double(*d);
      out += (s == "1e9999" || s == "-1e9999") ? "null" : s;  // JSON has no infinities
    } else if (const auto* s = std::get_if<std::string>(&data_)) {
      escape(out, *s);
    } else if (const auto* obj = std::get_if<Object>(&data_)) {
      if (obj->entries.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      for (std::size_t i = 0; i < obj->entries.size(); ++i) {
        out += pad;
        escape(out, obj->entries[i].first);
        out += ": ";
        obj->entries[i].second->write(out, indent, depth + 1);
        if (i + 1 < obj->entries.size()) out += ',';
        out += '\n';
      }
      out += pad_close + "}";
    } else if (const auto* arr = std::get_if<Array>(&data_)) {
      if (arr->items.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < arr->items.size(); ++i) {
        out += pad;
        arr->items[i]->write(out, indent, depth + 1);
        if (i + 1 < arr->items.size()) out += ',';
        out += '\n';
      }
      out += pad_close + "]";
    }
  }

  std::variant<std::nullptr_t, bool, std::int64_t, double, std::string, Object, Array> data_;
};

/// Minimal CSV with pinned column order and the same number formatting.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) throw ArgumentError("CsvWriter: need at least one column");
    append_row(columns_);
  }

  void add_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_.size())
      throw ArgumentError("CsvWriter: row width does not match the header");
    append_row(cells);
  }

  const std::string& str() const { return out_; }

  static std::string cell(double v) { return format_double(v); }
  static std::string cell(std::int64_t v) { return std::to_string(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(bool v) { return v ? "true" : "false"; }

 private:
  void append_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ += ',';
      if (cells[i].find_first_of(",\"\n") != std::string::npos) {
        out_ += '"';
        for (char c : cells[i]) {
          if (c == '"') out_ += '"';
          out_ += c;
        }
        out_ += '"';
      } else {
        out_ += cells[i];
      }
    }
    out_ += '\n';
  }

  std::vector<std::string> columns_;
  std::string out_;
};

}  // namespace gbv
