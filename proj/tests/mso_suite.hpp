#pragma once

#include <string>
#include <vector>

#include "dga/graph.hpp"

namespace suite {

/// Sentences over node labels {a, b} and the single edge symbol blank.
inline std::vector<std::string> mso_sentences() {
  return {
      "EX x . lab[a](x)",
      "ALL x . lab[a](x)",
      "EX x . EX y . edge[blank](x,y)",
      "EX x . edge[blank](x,x)",
      "ALL x . EX y . edge[blank](y,x)",
      "EX x y . !(x = y) & lab[a](x) & lab[b](y)",
      "ALL x y . edge[blank](x,y) -> edge[blank](y,x)",
      "EX X . ALL x . (x in X <-> lab[a](x))",
      "EX X . (EX x . x in X) & ALL x y . (x in X & edge[blank](x,y) -> y in X)",
      "ALL x . (lab[a](x) -> EX y . edge[blank](x,y) & lab[b](y))",
      "EX x . ALL y . (x = y | edge[blank](x,y))",
      "!EX x y . edge[blank](x,y) & lab[a](x) & lab[a](y)",
  };
}

inline dga::Alphabets mso_alphabets() { return {dga::SymbolSet({"a", "b"}), dga::SymbolSet({"blank"})}; }

/// The 3-colorability sentence over blank graphs.
inline std::string color3_sentence() {
  return "EX S H C . "
         "(ALL u . (u in S | u in H | u in C) & !(u in S & u in H) & !(u in S & u in C) & !(u in H & u in C)) & "
         "(ALL u v . edge[blank](u,v) -> !(u in S & v in S) & !(u in H & v in H) & !(u in C & v in C))";
}

}  // namespace suite
