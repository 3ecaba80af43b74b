#pragma once

#include "anitm/corpus.hpp"

namespace anitm::testing {

using anitm::corpus_2d;
using anitm::CorpusEntry;
using anitm::sample_2d;

}  // namespace anitm::testing
