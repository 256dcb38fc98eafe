#pragma once

#include <string>

#include "autogrp/fsa.hpp"

namespace autogrp {

// Canonical text form.  States are numbered from 1; arcs are listed with
// source ascending, then symbol ascending; absent transitions are omitted.
// Pair symbols print as left,right with _ for padding.  Deterministic, so
// equal automata serialize byte-identically.
//
//   fsa {
//     kind = pair ;            # omitted for plain dfas
//     alphabet = a A b B ;
//     inverses = a:A b:B ;
//     states = 5 ;
//     initial = 1 ;
//     labels = 1:_ 3:uu ;      # midfa initial-state labels
//     accepting = 1 2 3 4 5 ;
//     reads = 1:1 2:2 ;        # async read heads
//     arcs {
//       1 a 2 ;
//     }
//   }
std::string fsa_to_text(const Fsa& f);
Fsa fsa_from_text(const std::string& text);

void fsa_save(const Fsa& f, const std::string& path);
Fsa fsa_load(const std::string& path);

}  // namespace autogrp
