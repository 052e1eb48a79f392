// Classifies the seven representative states and prints one line per state.

#include <cstdio>

#include "tripartite/tripartite.hpp"

int main() {
  using namespace tripartite;
  for (NamedState tag : kNamedStates) {
    const PureState s = named(tag);
    const ClassificationReport r = classify_state(s, MeasurementMode::circuit());
    std::printf("%-6s G=(%.4f, %.4f, %.4f)  <XXX>=%+.4f  tau=%.4f  -> %s\n", to_string(tag).c_str(), r.witnesses.g1,
                r.witnesses.g2, r.witnesses.g3, r.tangle.xxx_expectation, r.tangle.tangle, to_string(r.label).c_str());
  }
}
