#include "fcat/config.hpp"

namespace fcat {

namespace {

const char k_a2_standard[] = R"CFG(# Bounded derived category of A2 representations, standard t-structure.

quiver {
  vertices = [ "1", "2" ]
  arrow "a" { from = "1"  to = "2" }
}

rep "S1" { dim "1" = 1 }
rep "S2" { dim "2" = 1 }
rep "P1" {
  dim "1" = 1
  dim "2" = 1
  map "a" = [ [ 1/1 ] ]
}

tstructure { kind = "standard" }

probes = [ "S1", "S2", "P1" ]
generators = [ "S1", "S2", "P1" ]

# Projection P1 -> S1; its realization is quasi-isomorphic to S2.
heart_complex "K" {
  lo = 0
  term { rep = "P1" }
  term { rep = "S1" }
  diff 0 = [ 1/1 ]
}

realize { complex = "K" }

axioms { seed = 1  samples = 8 }
)CFG";

const char k_a2_tilt_pos[] = R"CFG(# A2 tilted at the torsion pair with torsion class generated by {S1, P1}
# (torsion-free class add S2).

quiver {
  vertices = [ "1", "2" ]
  arrow "a" { from = "1"  to = "2" }
}

rep "S1" { dim "1" = 1 }
rep "S2" { dim "2" = 1 }
rep "P1" {
  dim "1" = 1
  dim "2" = 1
  map "a" = [ [ 1/1 ] ]
}

torsion "TILT_POS" { generators = [ "S1", "P1" ] }

tstructure { kind = "tilt"  torsion = "TILT_POS" }

probes = [ "S1", "P1", { rep = "S2"  shift = 1 } ]
generators = [ "S1", "S2", "P1" ]

# The extension complex S1 -> S2[1] spanning Hom(S1, S2[1]); its
# realization is quasi-isomorphic to P1.
heart_complex "K" {
  lo = 0
  term { rep = "S1" }
  term { rep = "S2"  shift = 1 }
  diff 0 = [ 1/1 ]
}

realize { complex = "K" }

axioms { seed = 2  samples = 8 }
)CFG";

const char k_a2_tilt_neg[] = R"CFG(# A2 tilted at the torsion pair with torsion class generated by {S2}
# (torsion-free class add S1). The Ext^2 criterion fails here.

quiver {
  vertices = [ "1", "2" ]
  arrow "a" { from = "1"  to = "2" }
}

rep "S1" { dim "1" = 1 }
rep "S2" { dim "2" = 1 }
rep "P1" {
  dim "1" = 1
  dim "2" = 1
  map "a" = [ [ 1/1 ] ]
}

torsion "TILT_NEG" { generators = [ "S2" ] }

tstructure { kind = "tilt"  torsion = "TILT_NEG" }

probes = [ "S2", { rep = "S1"  shift = 1 } ]
generators = [ "S1", "S2", "P1" ]

heart_complex "K" {
  lo = 0
  term { rep = "S2" }
}

realize { complex = "K" }

axioms { seed = 3  samples = 8 }
)CFG";

const char k_a3_subcat[] = R"CFG(# Linear A3 quiver 1 -> 2 -> 3; functoriality probes over vertex-supported
# and thick subcategories.

quiver {
  vertices = [ "1", "2", "3" ]
  arrow "a" { from = "1"  to = "2" }
  arrow "b" { from = "2"  to = "3" }
}

rep "S1" { dim "1" = 1 }
rep "S2" { dim "2" = 1 }
rep "S3" { dim "3" = 1 }
rep "P2" {
  dim "2" = 1
  dim "3" = 1
  map "b" = [ [ 1/1 ] ]
}
rep "M12" {
  dim "1" = 1
  dim "2" = 1
  map "a" = [ [ 1/1 ] ]
}

tstructure { kind = "standard" }

probes = [ "S1", "S2", "S3" ]
generators = [ "S1", "S2", "S3" ]

subcat "D23" { kind = "vertex-support"  vertices = [ "2", "3" ] }
subcat "D12" { kind = "vertex-support"  vertices = [ "1", "2" ] }
subcat "TH23" { kind = "thick-generated"  generators = [ "S2", "S3" ]  depth = 3 }

heart_complex "K23" {
  lo = 0
  term { rep = "P2" }
  term { rep = "S2" }
  diff 0 = [ 1/1 ]
}
heart_complex "K12" {
  lo = 0
  term { rep = "M12" }
  term { rep = "S1" }
  diff 0 = [ 1/1 ]
}
heart_complex "K2ID" {
  lo = 0
  term { rep = "S2" }
  term { rep = "S2" }
  diff 0 = [ 1/1 ]
}

functoriality { subcat = "D23"  complex = "K23" }
functoriality { subcat = "D12"  complex = "K12" }
functoriality { subcat = "TH23"  complex = "K23" }
functoriality { subcat = "D23"  complex = "K2ID" }

realize { complex = "K23" }

axioms { seed = 5  samples = 6 }
)CFG";

}  // namespace

const std::vector<std::pair<std::string, std::string>>& builtin_configs() {
  static const std::vector<std::pair<std::string, std::string>> table = {
      {"a2_standard", k_a2_standard},
      {"a2_tilt_pos", k_a2_tilt_pos},
      {"a2_tilt_neg", k_a2_tilt_neg},
      {"a3_subcat", k_a3_subcat},
  };
  return table;
}

const std::string* find_builtin_config(const std::string& name) {
  for (const auto& [n, text] : builtin_configs())
    if (n == name) return &text;
  return nullptr;
}

}  // namespace fcat
