#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "offsetforge/identifier_scheme.hpp"
#include "offsetforge/index_builder.hpp"

namespace offsetforge {

struct CollisionGroup {
    std::string key;
    // One (full_identifier, location) per distinct full identifier, in
    // (source_file, byte_offset) order of first appearance. Exact duplicates
    // of the same identifier are deduplicated out of groups and tallied
    // separately on the report.
    std::vector<std::pair<std::string, RecordLocation>> members;
};

struct CollisionReport {
    std::vector<CollisionGroup> collision_groups; // sorted by key
    uint64_t colliding_key_count = 0;
    uint64_t colliding_record_count = 0; // sum of group member counts
    uint64_t duplicate_record_count = 0; // same (key, full id) seen again
    uint64_t scanned_entry_count = 0;
    double observed_rate = 0.0;  // colliding_record_count / scanned_entry_count
    double expected_count = 0.0; // birthday approximation for this scan
};

/// Exact n-way set intersection; output sorted lexicographically.
std::vector<std::string> intersect(const std::vector<std::vector<std::string>>& id_lists);

/// Maps every identifier through the scheme first, then intersects the key
/// sets. Under a truncated-hash scheme colliding identifiers merge, which is
/// how hash-keyed intersections drift from full-identifier ones.
std::vector<std::string> intersect_keys(const std::vector<std::vector<std::string>>& id_lists,
                                        const IdentifierScheme& scheme);

/// Groups every key whose entries carry >= 2 distinct full identifiers.
/// Full-scheme indexes trivially produce an empty report.
CollisionReport audit_collisions(const PersistentIndex& index);

/// Birthday-bound approximation n^2 / (2h) for the expected number of
/// collisions among n items hashed into a space of size h.
double expected_collisions(double n, double hash_space);

/// Exact uniform-hash expectation of the number of keys holding >= 2 of n
/// items: h * (1 - (1-1/h)^n - (n/h)(1-1/h)^(n-1)). Cross-check for the
/// approximation above.
double expected_collision_groups_exact(double n, double hash_space);

double collision_rate(uint64_t colliding_records, uint64_t total_entries);

struct MigrationResult {
    PersistentIndex index;
    CollisionReport audit;
};

/// Re-keys every entry under the target scheme (full identifiers are always
/// retained, so migration works in both directions) and audits the result.
/// No entries are lost.
MigrationResult migrate_scheme(const PersistentIndex& index, const IdentifierScheme& target);

} // namespace offsetforge
