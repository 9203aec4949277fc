#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "seqm/sequence.hpp"

namespace seqm {

// Text format: one ASCII digit per symbol, line breaks and other whitespace
// between digits ignored. Lines starting with '#' are headers holding
// whitespace-separated key=value pairs; the key "alphabet" sets m and every
// other pair becomes provenance. Values are percent-encoded on write.

/// Alphabet precedence: explicit argument, then the header's "alphabet" key, then 2.
Sequence parse_sequence_text(std::string_view text, std::optional<unsigned> alphabet = std::nullopt);
std::string format_sequence_text(const Sequence& seq);

Sequence read_sequence(const std::filesystem::path& path, std::optional<unsigned> alphabet = std::nullopt);
void write_sequence(const Sequence& seq, const std::filesystem::path& path);

}  // namespace seqm
