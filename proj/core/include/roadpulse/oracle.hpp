#pragma once

#include "roadpulse/mapper.hpp"

namespace roadpulse {

/// Reference mapper: same contract and evidence rules as Mapper::map, built
/// from nothing but per-phrase, per-position scans. Quadratic and meant for
/// testing; keep it free of the compiled automaton so the two can check each
/// other.
MappingResult oracle_map(const CleanedTweet& cleaned, const Lexicon& lexicon,
                         MappingConfig config = {});

} // namespace roadpulse
