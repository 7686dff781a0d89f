#include "offsetforge/integrity.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "offsetforge/errors.hpp"

namespace offsetforge {

std::vector<std::string> intersect(const std::vector<std::vector<std::string>>& id_lists) {
    if (id_lists.size() < 2) throw DomainError("intersect requires at least 2 identifier sets");

    std::set<std::string> acc(id_lists[0].begin(), id_lists[0].end());
    for (size_t i = 1; i < id_lists.size() && !acc.empty(); ++i) {
        std::unordered_set<std::string> next(id_lists[i].begin(), id_lists[i].end());
        for (auto it = acc.begin(); it != acc.end();) {
            if (next.count(*it) == 0) {
                it = acc.erase(it);
            } else {
                ++it;
            }
        }
    }
    return {acc.begin(), acc.end()};
}

std::vector<std::string> intersect_keys(const std::vector<std::vector<std::string>>& id_lists,
                                        const IdentifierScheme& scheme) {
    std::vector<std::vector<std::string>> keyed(id_lists.size());
    for (size_t i = 0; i < id_lists.size(); ++i) {
        keyed[i].reserve(id_lists[i].size());
        for (const auto& id : id_lists[i]) keyed[i].push_back(hash_key(id, scheme));
    }
    return intersect(keyed);
}

CollisionReport audit_collisions(const PersistentIndex& index) {
    CollisionReport report;
    report.scanned_entry_count = index.entry_count();

    const auto& entries = index.entries; // canonical (key, file, offset) order
    size_t i = 0;
    while (i < entries.size()) {
        size_t j = i;
        while (j < entries.size() && entries[j].key == entries[i].key) ++j;

        // Distinct full identifiers under this key, keeping the first
        // location of each in (file, offset) order.
        CollisionGroup group;
        group.key = entries[i].key;
        for (size_t k = i; k < j; ++k) {
            bool seen = false;
            for (const auto& [id, loc] : group.members) {
                if (id == entries[k].full_identifier) {
                    seen = true;
                    break;
                }
            }
            if (seen) {
                report.duplicate_record_count += 1;
            } else {
                group.members.emplace_back(entries[k].full_identifier, entries[k].location);
            }
        }
        if (group.members.size() >= 2) {
            report.colliding_key_count += 1;
            report.colliding_record_count += group.members.size();
            report.collision_groups.push_back(std::move(group));
        }
        i = j;
    }

    if (report.scanned_entry_count > 0) {
        report.observed_rate = static_cast<double>(report.colliding_record_count) /
                               static_cast<double>(report.scanned_entry_count);
    }
    if (!index.scheme.is_full()) {
        double space = std::ldexp(1.0, static_cast<int>(index.scheme.hash_bits));
        report.expected_count =
            expected_collisions(static_cast<double>(report.scanned_entry_count), space);
    }
    return report;
}

double expected_collisions(double n, double hash_space) {
    if (n < 0) throw DomainError("entry count must be non-negative");
    if (hash_space <= 0) throw DomainError("hash space size must be positive");
    return n * n / (2.0 * hash_space);
}

double expected_collision_groups_exact(double n, double hash_space) {
    if (n < 0) throw DomainError("entry count must be non-negative");
    if (hash_space <= 0) throw DomainError("hash space size must be positive");
    double h = hash_space;
    double log_q = n * std::log1p(-1.0 / h);
    double q = std::exp(log_q);                                // (1-1/h)^n
    double q1 = std::exp((n - 1.0) * std::log1p(-1.0 / h));    // (1-1/h)^(n-1)
    return h * (1.0 - q - (n / h) * q1);
}

double collision_rate(uint64_t colliding_records, uint64_t total_entries) {
    if (total_entries == 0) throw DomainError("total_entries must be positive");
    if (colliding_records > total_entries) {
        throw DomainError("colliding_records exceeds total_entries");
    }
    return static_cast<double>(colliding_records) / static_cast<double>(total_entries);
}

MigrationResult migrate_scheme(const PersistentIndex& index, const IdentifierScheme& target) {
    MigrationResult result;
    result.index.scheme = target;
    result.index.id_property = index.id_property;
    result.index.source_fingerprint = index.source_fingerprint;
    result.index.entries.reserve(index.entries.size());
    for (const auto& entry : index.entries) {
        IndexEntry moved;
        moved.full_identifier = entry.full_identifier;
        moved.key = hash_key(entry.full_identifier, target);
        moved.location = entry.location;
        result.index.entries.push_back(std::move(moved));
    }
    result.index.canonicalize();
    result.audit = audit_collisions(result.index);
    return result;
}

} // namespace offsetforge
