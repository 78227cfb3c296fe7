#pragma once

#include <string>
#include <vector>

#include "vos/group.hpp"

namespace vos {

struct CorpusEntry {
    GroupPtr group;
    std::vector<std::string> tags;
};

// Shared constructor for the named builtin families:
//   cyclic[n], abelian[f1,f2,...], elemab[p,k], dihedral[order],
//   quaternion[order], extraspecial[p,exponent], UT[n,p], utsub[order], S3[]
// "utsub" are fixed generator-closure subgroups of unitriangular groups kept
// in the corpus because their vanishing-off series separates strictly from
// the lower central series at high indices.
GroupPtr build_builtin_family(const std::string& family, const std::vector<unsigned>& params,
                              const BuildOptions& opts = {});

// Deterministic study population: every builtin family instance with order
// <= maxOrder, in a fixed declaration order.
std::vector<CorpusEntry> builtin_corpus(std::size_t maxOrder, const BuildOptions& opts = {});

// One group per JSON file:
//   {format: 1, name, kind: permutation|cayley|unitriangular|builtin,
//    degree?, generators?, table?, n?, p?, family?, params?,
//    expected?: {order?, classCount?, nilpotenceClass?}}
// "expected" facts are asserted after construction; a mismatch is an error
// naming both values.
GroupPtr load_group_file(const std::string& path, const BuildOptions& opts = {});

// Manifest JSON: {format: 1, groups: [{path, tags: [string]}]}. Paths resolve
// relative to the manifest's directory; group names must be unique.
std::vector<CorpusEntry> load_manifest(const std::string& path, const BuildOptions& opts = {});

} // namespace vos
