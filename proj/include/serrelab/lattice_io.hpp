#pragma once

// JSON form of a lattice: {"elements": [...], "covers": [[lo, hi], ...]}.

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "serrelab/errors.hpp"
#include "serrelab/lattice.hpp"

namespace serrelab {

inline Lattice lattice_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("elements") || !j.contains("covers")) {
    throw invalid_input("lattice JSON needs \"elements\" and \"covers\"");
  }
  const auto& el = j.at("elements");
  const auto& cv = j.at("covers");
  if (!el.is_array() || !cv.is_array()) throw invalid_input("\"elements\" and \"covers\" must be arrays");
  std::vector<std::string> elements;
  for (const auto& e : el) {
    if (e.is_string()) {
      elements.push_back(e.get<std::string>());
    } else if (e.is_number_integer()) {
      elements.push_back(std::to_string(e.get<long long>()));
    } else {
      throw invalid_input("element labels must be strings or integers");
    }
  }
  auto label = [](const nlohmann::json& e) -> std::string {
    if (e.is_string()) return e.get<std::string>();
    if (e.is_number_integer()) return std::to_string(e.get<long long>());
    throw invalid_input("cover endpoints must be strings or integers");
  };
  std::vector<std::pair<std::string, std::string>> covers;
  for (const auto& c : cv) {
    if (!c.is_array() || c.size() != 2) throw invalid_input("each cover must be a pair [lo, hi]");
    covers.emplace_back(label(c[0]), label(c[1]));
  }
  return build_lattice(elements, covers);
}

inline Lattice lattice_from_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw invalid_input(std::string("malformed JSON: ") + e.what());
  }
  return lattice_from_json(j);
}

inline Lattice load_lattice(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return lattice_from_string(ss.str());
}

inline nlohmann::ordered_json lattice_to_json(const Poset& p) {
  nlohmann::ordered_json j;
  j["elements"] = p.labels();
  auto covers = nlohmann::ordered_json::array();
  for (const Cover& c : p.covers()) covers.push_back({p.label(c.lo), p.label(c.hi)});
  j["covers"] = covers;
  return j;
}

/// 64-bit FNV-1a of the canonical JSON dump, as 16 hex digits.
inline std::string fingerprint(const Poset& p) {
  const std::string s = lattice_to_json(p).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace serrelab
