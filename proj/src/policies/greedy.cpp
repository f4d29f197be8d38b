#include "mfc/policies/greedy.hpp"

namespace mfc::policies {

int GreedyPolicy::decide(const env::PolicyObservation& obs) {
  int best = 0;
  for (int a = 1; a < world::kNumActions; ++a)
    if (obs.predicted_latency_s[a] < obs.predicted_latency_s[best]) best = a;
  return best;
}

}  // namespace mfc::policies
