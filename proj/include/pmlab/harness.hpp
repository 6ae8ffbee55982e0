#pragma once

// Reference indexing structures with model-time accounting, and the
// benchmark runner that sets their measured points beside a bound
// certificate.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pmlab/gapped.hpp"
#include "pmlab/pointer_machine.hpp"
#include "pmlab/two_pattern.hpp"

namespace pmlab {

enum class StructureKind { naive_scan, inverted_lists, full_table };

std::string_view structure_name(StructureKind k);  // "naive-scan", ...
// Also accepts "naive", "inverted" and "full".
StructureKind parse_structure(std::string_view name);

struct Answer {
    std::vector<std::uint64_t> ids;  // sorted document ids (pattern ranks for gpi)
    std::uint64_t time = 0;          // cells touched
};

class ReferenceStructure {
public:
    virtual ~ReferenceStructure() = default;

    StructureKind kind() const noexcept { return kind_; }
    std::uint64_t space_cells() const noexcept { return space_; }

    virtual std::uint64_t query_count() const = 0;
    Answer answer(std::uint64_t rank) const;
    // Brute force through the core matchers.
    virtual std::vector<std::uint64_t> oracle(std::uint64_t rank) const = 0;

    // Test hook: corrupts the answer to one query.
    void inject_fault(std::uint64_t rank) { faults_.insert(rank); }

protected:
    ReferenceStructure(StructureKind kind, std::uint64_t space) : kind_(kind), space_(space) {}
    virtual Answer compute(std::uint64_t rank) const = 0;
    void set_space(std::uint64_t space) { space_ = space; }

private:
    StructureKind kind_;
    std::uint64_t space_;
    std::set<std::uint64_t> faults_;
};

inline constexpr std::uint64_t kDefaultMemoryBudget = 200'000'000;

// The instance must outlive the structure.  full-table throws
// FamilyTooLarge once its stored entries pass memory_budget.
std::unique_ptr<ReferenceStructure> build_structure(StructureKind kind, const Instance2P& inst,
                                                    std::uint64_t memory_budget = kDefaultMemoryBudget);
// Gapped-pattern dictionary; queries are the texts of the family.
// inverted-lists is not offered here.
std::unique_ptr<ReferenceStructure> build_structure(StructureKind kind, const ParamsGpi& params,
                                                    std::uint64_t memory_budget = kDefaultMemoryBudget);

class BenchMismatch : public std::runtime_error {
public:
    explicit BenchMismatch(std::uint64_t rank)
        : std::runtime_error("answer mismatch on query " + std::to_string(rank)), rank_(rank) {}
    std::uint64_t rank() const noexcept { return rank_; }

private:
    std::uint64_t rank_;
};

struct BenchRow {
    std::uint64_t query_rank = 0;
    std::uint64_t output_size = 0;
    std::uint64_t time_units = 0;
    std::uint64_t space_cells = 0;
};

struct BenchConfig {
    std::uint64_t ell = 1;
    std::uint64_t beta = 1;
    std::uint64_t alpha = 1;
    BoundConstants constants;
};

struct BenchResult {
    std::vector<BenchRow> rows;  // in query-rank order
    std::uint64_t min_output = 0;
    BoundCertificate chazelle;
    // min over rows of space * max(time - output, 1)
    double min_space_overhead = 0;
    bool dominates = false;
};

// Distinct sorted ranks: all of [0, n) when n <= count, else a seeded sample.
std::vector<std::uint64_t> sample_ranks(std::uint64_t n, std::uint64_t count, std::uint64_t seed);

// Answers every query, cross-checks against the oracle (BenchMismatch on the
// first failing rank), and writes the CSV with its footer when `csv` is set.
BenchResult run_benchmark(const ReferenceStructure& s, std::span<const std::uint64_t> ranks,
                          const BenchConfig& config, std::ostream* csv = nullptr);

}  // namespace pmlab
