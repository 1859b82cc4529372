#pragma once
// Constructors and metadata for the group families used in the experiments:
// abelian products, A_n / S_n, SL/PSL/PGL(2,q), Schur covers, |Out|, |H2|.
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "group.hpp"

namespace rhm {

struct GroupSpec {
  enum Kind { Abelian, Alt, Sym, PSL2, PGL2, SL2 } kind;
  std::vector<long> moduli;  // Abelian: factor orders
  int n = 0;                 // Alt/Sym degree, or q for matrix families

  static GroupSpec parse(const std::string& s);  // throws on bad spec
  std::string format() const;
};

struct GroupMeta {
  uint64_t order = 0;
  uint64_t aut_order = 0;
  uint64_t out_order = 0;
  uint64_t h2_order = 0;
  bool simple = false;
  std::string source;  // "table" or "computed"
};

struct BuiltGroup {
  std::shared_ptr<const FiniteGroup> G;
  AutomorphismSet auts;
  GroupMeta meta;
  GroupSpec spec;
};

// build (cached); returned reference lives for the program duration
const BuiltGroup& build_group(const std::string& spec);
const BuiltGroup& build_group(const GroupSpec& spec);

// formula-based metadata without materializing the table (works above the
// dense cap, e.g. A_8, A_9); fields that have no closed form for the family
// are left 0
GroupMeta group_meta(const std::string& spec);

struct SchurCoverData {
  std::shared_ptr<const FiniteGroup> cover;  // S
  const FiniteGroup* quotient = nullptr;     // Q
  GroupHom projection;                        // S -> Q
  std::vector<Elt> h2_elements;               // kernel, identified with H2(Q)
  // a fixed section Q -> S (projection o section = id)
  std::vector<Elt> section;

  bool verify() const;
};

// throws if no cover is available for the spec
SchurCoverData schur_cover(const std::string& spec);
bool schur_cover_available(const std::string& spec);

// sum of 1/|Aut(Q)| over specs (metadata only; groups need not be built)
double partial_aut_sum(const std::vector<std::string>& specs);

// paper table rows carried as verified built-in metadata
struct ExpectedTableRow {
  std::string name;      // catalog spec string, or display-only name
  uint64_t order;
  uint64_t gen_pairs;    // |E'(Q,2)|
  uint64_t out_order;
  bool constructible;    // catalog can build it within caps
};
const std::vector<ExpectedTableRow>& expected_table();

struct Genus2SimpleRow {
  std::string name;
  uint64_t order, out_order, h2_order;
  double p_g2_percent;       // Monte Carlo column
  double p_inf_percent;      // 100(1 - e^{-mu})
  double sing_quo_percent;   // tunnel-number-one column
  bool constructible;
};
const std::vector<Genus2SimpleRow>& genus2_simple_table();

}  // namespace rhm
