#pragma once

#include <vector>

#include "resnet_synth/construct.hpp"
#include "resnet_synth/geometry.hpp"
#include "resnet_synth/verify.hpp"

namespace resnet_synth {

struct Synthesis {
  ResNet net;
  ParallelNet parallel;
  std::vector<PolytopeCover> covers;
  VerificationReport report;

  const ReadoutSpec& readout() const { return parallel.readout; }
};

// covers -> parallel branches -> merged ResNet. The result is verified on
// every dataset point before it is returned; a network that fails is never
// handed back.
inline Synthesis synthesize(const LabeledDataset& d, const SynthesisConfig& cfg = {}) {
  cfg.validate();
  check_dataset(d);
  Synthesis s;
  for (int label = 1; label <= d.k; ++label) {
    bool present = false;
    for (int l : d.labels) present = present || l == label;
    if (present) s.covers.push_back(build_cover(d, label, cfg.cover));
  }
  s.parallel = build_parallel(d, s.covers, cfg);
  s.net = merge_to_single(s.parallel);
  auto valid = validate_net(s.net);
  if (!valid.ok()) {
    throw Error(ErrorKind::verification_failed, "synthesized network is malformed: " + valid.first()->detail);
  }
  s.report = verify_dataset(s.net, d);
  if (!s.report.ok()) {
    throw Error(ErrorKind::verification_failed, "synthesized network misclassifies " +
                                                    std::to_string(s.report.failed) + " of " +
                                                    std::to_string(d.size()) + " points");
  }
  return s;
}

}  // namespace resnet_synth
