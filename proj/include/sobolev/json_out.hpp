#pragma once

// JSON text with every floating-point number written to 17 significant
// digits. Structure and string escaping come from nlohmann::json; only the
// number formatting differs from its dump().

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace sobolev {

using Json = nlohmann::ordered_json;

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline void newline(std::string& out, int indent, int depth) {
  if (indent < 0) return;
  out += '\n';
  out.append(static_cast<std::size_t>(indent * depth), ' ');
}

inline void dump_to(const Json& j, std::string& out, int indent, int depth) {
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(out, indent, depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump_to(it.value(), out, indent, depth + 1);
      }
      newline(out, indent, depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        newline(out, indent, depth + 1);
        dump_to(v, out, indent, depth + 1);
      }
      newline(out, indent, depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_g17(v) : "null";
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

}  // namespace detail

// indent < 0 gives compact single-line output.
inline std::string dump_json(const Json& j, int indent = 2) {
  std::string out;
  detail::dump_to(j, out, indent, 0);
  return out;
}

}  // namespace sobolev
