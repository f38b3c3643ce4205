#pragma once

#include <iosfwd>
#include <string>

#include "akb/engine.hpp"

namespace akb {

enum class TraceFormat { Text, JsonLines };

// One JSON object per event, without a trailing newline. Levels are written
// by name and decisions as bot/tt/ff/top.
std::string event_json(const TraceEvent& ev, const Lattice& lattice);
std::string event_text(const TraceEvent& ev, const Lattice& lattice);

void write_trace(std::ostream& os, const Trace& trace, TraceFormat format);

}  // namespace akb
