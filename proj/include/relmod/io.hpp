#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "relmod/algebra.hpp"

namespace relmod {

/// On-disk instance: an algebra plus named functionals, stored as JSON with
/// explicit real/imaginary arrays per block. Hermiticity is enforced on load;
/// asymmetry beyond 1e-8 (relative) is rejected.
struct InstanceFile {
    Algebra algebra;
    std::map<std::string, std::vector<Matrix>> functionals;  // ordered by name
    std::uint64_t seed = 0;
    std::string description;
    double prior_p = 0.5;  // used by the chernoff command
};

std::string serialize_instance(const InstanceFile& inst);
InstanceFile parse_instance(const std::string& text, const std::string& origin = "<memory>");

void save_instance(const std::string& path, const InstanceFile& inst);
InstanceFile load_instance(const std::string& path);

/// Extract one named functional; throws InputError if missing or not PSD.
NormalFunctional functional_from(const InstanceFile& inst, const std::string& name,
                                 const TolerancePolicy& tol = {});

/// Fixed 17-significant-digit formatting used for every numeric CSV field.
std::string format_number(double v);

}  // namespace relmod
