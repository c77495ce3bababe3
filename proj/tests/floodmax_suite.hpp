#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dga/dpl.hpp"

namespace suite {

inline std::string read_data(const std::string& name) {
  std::ifstream in(std::string(DGA_DATA_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing data file " + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Reads a program from the data directory, replacing its domain line.
inline dga::DplProgram load_program(const std::string& name, const std::string& domain = {}) {
  std::string text = read_data(name);
  if (!domain.empty()) {
    const auto at = text.find("\ndomain ");
    const auto end = text.find('\n', at + 1);
    text = text.substr(0, at + 1) + "domain " + domain + text.substr(end);
  }
  return dga::parse_dpl(text, name);
}

struct NamedAssertion {
  const char* name;
  const char* text;
};

/// The four annotations of the annotated FloodMax program.
inline const std::vector<NamedAssertion>& floodmax_assertions() {
  static const std::vector<NamedAssertion> all = {
      {"phi", "all v: (v.m == v.m_ini and v.m_old == 0)"},
      {"theta", "alledges u v: u.m_old <= v.m and all v: v.m >= v.m_ini and some v: v.m == v.m_ini"},
      {"psi", "alledges u v: u.m <= v.m and all v: v.m >= v.m_ini and some v: v.m == v.m_ini"},
      {"xi", "some v: v.m != v.m_old"},
  };
  return all;
}

}  // namespace suite
