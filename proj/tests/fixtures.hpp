#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "mlrf/loop.hpp"

namespace fixtures {

inline std::string read(const std::string &name) {
  std::ifstream in(std::string(MLRF_FIXTURES) + "/" + name);
  if (!in)
    throw std::runtime_error("missing fixture " + name);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

inline mlrf::SlcLoop loop(const std::string &name) {
  return mlrf::parse_loop(read(name + ".loop"));
}

inline mlrf::RankTuple tuple(const std::string &name, const mlrf::SlcLoop &l,
                             mlrf::TupleKind kind = mlrf::TupleKind::Mlrf) {
  return mlrf::parse_tuple(read(name + ".tuple"), l.var_names, kind);
}

} // namespace fixtures
