#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>

namespace qb {

enum class Model { Nonrel, A2, Rel, Pauli };
enum class Statistics { Single, Boson, Fermion };
enum class Side { Upper, Lower };

const char* to_string(Model m);
const char* to_string(Statistics s);
const char* to_string(Side s);

// One evaluated bound.
struct BoundRecord {
  Model model = Model::Nonrel;
  Statistics statistics = Statistics::Single;
  Side side = Side::Lower;
  double value = 0.0;
  double alpha = 0.0;
  double lambda_uv = 0.0;
  int n_particles = 1;
  std::optional<double> box_side;  // empty for continuum evaluations
  std::map<std::string, double> constants_used;
  std::string regime;
  std::string aux_name;
  double aux_value = std::numeric_limits<double>::quiet_NaN();
  bool degenerate = false;
  std::string note;
};

}  // namespace qb
