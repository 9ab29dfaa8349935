#include "mlrf/affine.hpp"

namespace mlrf {

std::string format_affine(const AffineFunc &f,
                          const std::vector<std::string> &names) {
  if (names.size() != f.dim())
    throw DimensionError("need " + std::to_string(f.dim()) +
                         " variable names, got " +
                         std::to_string(names.size()));
  std::string out;
  for (std::size_t i = 0; i < f.dim(); ++i) {
    const Rational &c = f.coeffs[Eigen::Index(i)];
    if (c == 0)
      continue;
    Rational mag = abs(c);
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    if (mag != 1)
      out += to_string(mag) + "*";
    out += names[i];
  }
  if (f.constant != 0 || out.empty()) {
    if (out.empty())
      out = to_string(f.constant);
    else
      out += (f.constant < 0 ? " - " : " + ") + to_string(abs(f.constant));
  }
  return out;
}

} // namespace mlrf
