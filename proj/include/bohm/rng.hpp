#pragma once
// Counter-based random number generation (Philox4x32-10). Every logical
// stream is addressed by (master seed, trajectory index, substream), so
// ensembles can be evaluated by any number of workers in any order and still
// produce identical draws per trajectory.

#include <array>
#include <cstdint>

namespace bohm {

// Substream roles within one trajectory's stream. Keeping the three kinds of
// draws on separate counters means adding or removing draws of one kind never
// shifts the others.
enum : std::uint32_t {
    kSubstreamMaxwellBoltzmann = 0,  // initial velocity draw
    kSubstreamNoisePath = 1,         // thermal force sequence
    kSubstreamBornPosition = 2,      // initial position draw
};

// One keyed block of the Philox4x32 bijection with 10 rounds.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// A deterministic stream of doubles: stateless apart from the draw index.
// Each draw consumes exactly one Philox block, so draw k of a stream is a
// pure function of (seed, trajectory, substream, k).
class RandomStream {
  public:
    RandomStream(std::uint64_t master_seed, std::uint64_t trajectory, std::uint32_t substream)
        : key_{static_cast<std::uint32_t>(master_seed & 0xffffffffu),
               static_cast<std::uint32_t>(master_seed >> 32)},
          traj_lo_(static_cast<std::uint32_t>(trajectory & 0xffffffffu)),
          traj_hi_(static_cast<std::uint32_t>(trajectory >> 32)),
          substream_(substream),
          draw_(0) {}

    // Uniform double in (0, 1), 53 effective bits.
    double uniform();

    // Standard normal deviate (Box-Muller).
    double normal();

    std::uint32_t draws_consumed() const { return draw_; }

  private:
    std::array<std::uint32_t, 4> next_block();

    std::array<std::uint32_t, 2> key_;
    std::uint32_t traj_lo_, traj_hi_, substream_, draw_;
};

}  // namespace bohm
