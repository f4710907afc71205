#include "tvstokes/field.hpp"

namespace tvstokes {

double mean(const ScalarField& a) {
  double sum = 0.0;
  for (double v : a.values()) sum += v;
  return sum / static_cast<double>(a.cells());
}

}  // namespace tvstokes
