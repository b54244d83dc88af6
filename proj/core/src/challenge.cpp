#include "brent/challenge.hpp"

#include <stdexcept>

#include "brent/bundled.hpp"
#include "brent/scheme_io.hpp"

namespace brent {

void ChallengeSpec::validate() const {
  if (id < 1 || id > 4) throw std::invalid_argument("challenge id must be 1, 2, 3 or 4");
  if (id == 3 && (blocked_summand < 0 || blocked_summand >= 23)) {
    throw std::invalid_argument("challenge 3: blocked summand must lie in [1, 23]");
  }
  if (id == 4 && m < 1) throw std::invalid_argument("challenge 4: m must be positive");
  if (pairing && (pairing->n != 3 || pairing->m() != 23)) {
    throw std::invalid_argument("challenge pairing must be for n=3, m=23");
  }
}

Pairing demonstration_pairing() { return pairing_from_core(fig1_scheme_a()); }

ChallengeInstance generate_challenge(const ChallengeSpec& spec) {
  spec.validate();
  ChallengeInstance out;
  switch (spec.id) {
    case 1:
    case 2: {
      Pairing p = spec.pairing ? *spec.pairing : random_pairing(3, 23, spec.pairing_seed);
      out.name = "challenge" + std::to_string(spec.id) + "-" +
                 (spec.pairing ? std::string("pairing") : "seed" + std::to_string(spec.pairing_seed));
      out.formula = hardcode_pairing(encode(3, 23), p);
      out.pairing = std::move(p);
      break;
    }
    case 3:
      out.name = "challenge3-summand" + std::to_string(spec.blocked_summand + 1);
      out.formula = block_type3_in_summand(encode(3, 23), spec.blocked_summand);
      break;
    case 4:
      out.name = "challenge4-m" + std::to_string(spec.m);
      out.formula = encode(3, spec.m);
      break;
  }
  return out;
}

std::vector<ChallengeInstance> generate_challenge_set(int id, std::uint64_t base_seed, int count) {
  std::vector<ChallengeInstance> out;
  if (id == 3 || id == 4) {
    ChallengeSpec spec;
    spec.id = id;
    out.push_back(generate_challenge(spec));
    return out;
  }
  for (int i = 0; i < count; ++i) {
    ChallengeSpec spec;
    spec.id = id;
    spec.pairing_seed = base_seed + static_cast<std::uint64_t>(i);
    if (id == 1 && i == 0) spec.pairing = demonstration_pairing();
    ChallengeInstance inst = generate_challenge(spec);
    if (id == 1 && i == 0) inst.name = "challenge1-demo";
    out.push_back(std::move(inst));
  }
  return out;
}

void write_challenge(const std::filesystem::path& dir, const ChallengeInstance& instance) {
  write_file(dir / (instance.name + ".cnf"), to_dimacs(instance.formula.cnf));
  write_file(dir / (instance.name + ".map"), instance.formula.base.render());
  if (instance.pairing) write_file(dir / (instance.name + ".pairing"), instance.pairing->render());
}

}  // namespace brent
