#pragma once

#include <string>
#include <vector>

#include "ontohyp/rng.hpp"

namespace ontohyp {

/// Vocabulary a generator draws from. Concepts are fictional nouns, members
/// are capitalized person names, properties are lowercase adjectives.
struct NamePools {
  std::vector<std::string> concepts;
  std::vector<std::string> members;
  std::vector<std::string> properties;

  bool operator==(const NamePools&) const = default;
};

/// Pool used for evaluation examples.
const NamePools& primary_pools();
/// Pool reserved for in-context demonstrations; disjoint from primary_pools().
const NamePools& demonstration_pools();

/// Draws names without replacement from a privately shuffled copy of a pool.
class NameSource {
 public:
  NameSource(const NamePools& pools, Rng& rng);

  /// Each throws PoolExhausted when the pool is empty.
  std::string next_concept();
  std::string next_member();
  std::string next_property();

  std::size_t concepts_left() const { return concepts_.size(); }
  std::size_t members_left() const { return members_.size(); }
  std::size_t properties_left() const { return properties_.size(); }

 private:
  std::vector<std::string> concepts_;
  std::vector<std::string> members_;
  std::vector<std::string> properties_;
};

}  // namespace ontohyp
