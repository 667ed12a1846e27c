#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rdpairs/group_model.hpp"
#include "rdpairs/models.hpp"

namespace rdp {

/// H = k_1 Z x ... x k_d Z in Z^d. k_i = 0 means the trivial factor {0}; k_i = 1 the full factor.
/// Coset key: the residues x_i mod k_i over coordinates with k_i != 1 (x_i itself when k_i = 0).
CosetsPtr latticeSublattice(const std::shared_ptr<const LatticeModel>& group,
                            const std::vector<std::int64_t>& k, std::string name);

/// Kernel of the exponent-sum map F_r -> Z. Coset key: the exponent sum.
CosetsPtr freeExponentSumKernel(const std::shared_ptr<const FreeGroupModel>& group);

/// Cyclic subgroup generated by one basis letter. Coset key: the word with its maximal
/// trailing power of that letter removed (the shortest element of the coset).
CosetsPtr freeCyclicFactor(const std::shared_ptr<const FreeGroupModel>& group, int letter);

/// <a> = {(0,m)}: key (k, x mod n^k).
CosetsPtr bsCyclicA(const std::shared_ptr<const BaumslagSolitarModel>& group);
/// <t> = {(j,0)}: key x.
CosetsPtr bsCyclicT(const std::shared_ptr<const BaumslagSolitarModel>& group);
/// Z[1/n] = {(0,y)}, normal with quotient Z: key k.
CosetsPtr bsRing(const std::shared_ptr<const BaumslagSolitarModel>& group);

/// Center {(0,0,c)}, quotient Z^2: key (a,b).
CosetsPtr heisenbergCenter(const std::shared_ptr<const HeisenbergModel>& group);

/// Subgroup of a finite group generated by `generators`; H is enumerated once.
/// Coset key: the smallest encoding in gH. Normality is decided by conjugating generators.
CosetsPtr finiteSubgroup(const ModelPtr& group, std::string name,
                         const std::vector<ElementKey>& generators);

/// H x L inside G x Gamma; the coset key pairs the component keys.
CosetsPtr productCosets(const std::shared_ptr<const ProductModel>& group, const CosetsPtr& first,
                        const CosetsPtr& second);

}  // namespace rdp
