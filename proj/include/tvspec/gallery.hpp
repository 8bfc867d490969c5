#pragma once

#include <cstdint>
#include <vector>

#include "tvspec/report.hpp"
#include "tvspec/rng.hpp"
#include "tvspec/seminorm_calculus.hpp"

namespace tvspec {

struct GalleryOutcome {
    bool passed = false;
    JsonValue details;
};

/// One registered worked example with its expected outcome. The source field
/// names the construction so a reader can locate it; ids are stable.
struct GalleryEntry {
    const char* id;
    const char* source;
    const char* expectation;
    GalleryOutcome (*run)(std::uint64_t seed);
};

const std::vector<GalleryEntry>& gallery();
const GalleryEntry* find_gallery_entry(const std::string& id);

/// Runs every entry; the report is deterministic for a fixed seed.
JsonValue run_full_gallery(std::uint64_t seed, bool& all_passed);

// --- shared corpus builders (gallery, acceptance suite, tests) ---

/// Mixed bag of diagonals, shifts, finite-rank kinds and their sums/scales.
std::vector<OperatorPtr> build_operator_corpus(std::uint64_t seed, std::size_t count);

OperatorPtr random_finite_rank(Rng& rng, int rank, Index max_idx);

/// Dense dim x dim block as a finite-rank operator plus its raw entries
/// (row-major), for independent eigenvalue oracles.
std::pair<OperatorPtr, std::vector<Complex>> random_dense_block(Rng& rng, Index dim);

} // namespace tvspec
