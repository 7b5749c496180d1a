#pragma once

// Named presentations: standard small p-groups and the order p^6 groups used
// to separate the GVZ, nested and VZ properties.

#include <functional>
#include <string>
#include <vector>

#include "pgclass/presentation.hpp"

namespace pgclass {

struct ExpectedVerdicts {
  bool gvz = false;
  bool nested = false;
  bool vz = false;
};

struct CorpusEntry {
  std::string label;
  std::string description;
  int order_exponent = 0;  // |G| = p^order_exponent
  int min_prime = 3;       // every odd prime >= min_prime is accepted
  ExpectedVerdicts expected;
  std::string citation;    // the result the expected verdicts rest on
  std::function<PcPresentation(int)> builder;
};

/// All entries in a fixed order.
const std::vector<CorpusEntry>& corpus_entries();

/// Throws InputError for an unknown label.
const CorpusEntry& corpus_entry(const std::string& label);

/// Throws InputError for an unknown label, an even or non-prime p, or p
/// below the entry's range.
PcPresentation build(const std::string& label, int p);

/// Generators of A followed by those of B. Clashing names from B get the
/// suffix _2 (repeated until unique).
PcPresentation direct_product(const PcPresentation& A, const PcPresentation& B, const std::string& name);

}  // namespace pgclass
