#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ddk/diagram.hpp"

namespace ddk::funcgen {

enum class Family : uint8_t { Mux, Hwb, Isa, Ws };

const char* family_name(Family f);
std::optional<Family> parse_family(const std::string& s);

/// mux/isa: k = log2 n; isa: l = log2 k, m = n / k; ws: p = smallest prime > n.
struct FamilyParams {
  Family family = Family::Hwb;
  int n = 0;
  int k = 0, l = 0, m = 0, p = 0;
};

/// Validates n and fills the derived fields. Throws E_PARAM.
FamilyParams make_params(Family f, int n);

/// Variables in the canonical order: address bits (MSB first) before data bits
/// for mux/isa, x1..xn for hwb/ws.
std::vector<std::string> family_vars(const FamilyParams& fp);

/// Direct evaluation; `a` is indexed like family_vars(fp).
bool eval_reference(const FamilyParams& fp, const Assignment& a);

/// OBDD over x1..xn accepting exactly the inputs of weight j. `order` lists
/// variable ids (0-based) and may be empty for the natural order.
Diagram gen_exact_count(int n, int j, const std::vector<VarId>& order = {});

/// Simple vee1-OBDD with one nondeterministic source over the family's
/// disjuncts; `negated` gives the complement.
Diagram gen_family(const FamilyParams& fp, bool negated = false);

int smallest_prime_gt(int n);

/// 2-OBDD for hwb/ws: the first layer computes the index, the second tests
/// the addressed bit. Throws E_PARAM for other families.
Diagram gen_two_obdd(const FamilyParams& fp);

}  // namespace ddk::funcgen
