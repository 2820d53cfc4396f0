#pragma once

// The full verification campaign: every named check with its configuration,
// loadable from a flat key=value file with one section per check.

#include "hardy/verify.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hardy {

enum class SobolevKind { Equivalence, GeneralizedHardy, ReversedHardy };

struct SobolevRun {
    SobolevKind kind = SobolevKind::Equivalence;
    std::string label;
    SobolevCheckConfig cfg;
};

struct CampaignConfig {
    std::uint64_t seed = 0;  // added to every per-check seed
    int threads = 1;
    std::vector<std::string> only;  // check names; empty runs everything

    CouplingCheckConfig coupling;
    LambdaStarCheckConfig lambda_star;
    GammaCheckConfig gamma;
    ExactKernelCheckConfig exact_kernel;
    HeatEnvelopeCheckConfig heat_envelope;
    DifferenceCheckConfig difference;
    MasterIntegralCheckConfig master;
    RieszCheckConfig riesz;
    PointwiseCheckConfig pointwise;
    HardySharpnessCheckConfig hardy;
    std::vector<SobolevRun> sobolev = default_sobolev_runs();
    LemmaIntegralCheckConfig lemma;
    SchurCheckConfig schur;
    CommutatorCheckConfig commutator;

    static std::vector<SobolevRun> default_sobolev_runs();
};

// Check names accepted by run_all's filter, in campaign order.
const std::vector<std::string>& check_names();

const char* kind_name(SobolevKind kind);

// Sections are named after the checks ([heat_envelope], [schur], ...).
// Sobolev runs use [equivalence], [equivalence-<label>], and likewise for
// generalized_hardy and reversed_hardy; any such section replaces the
// default runs of its kind. Lists are comma separated; master integral sets
// are written alpha:p:s. Unknown sections or keys raise ParameterError.
CampaignConfig load_campaign_config(std::istream& is);
CampaignConfig load_campaign_config(const std::string& path);

// Runs the selected checks, threads jobs at a time. Reports come back in
// campaign order whatever the thread count. A check that throws yields a
// failed report carrying the message.
std::vector<VerificationReport> run_all(const CampaignConfig& cfg);

} // namespace hardy
