#pragma once

// Cayley table text format:
//   # comment
//   order n
//   names a b c ...          (optional)
//   generators i j ...       (optional)
//   n rows of n indices
//   presentation             (optional block)
//   gens k
//   relator <word>           (generators g1..gk)
//   params K(a0,b0,k0)       (optional nil2 tag)
// The identity must be index 0; the loader re-indexes when it is not.

#include <iosfwd>
#include <string>

#include "domkit/fingroup.hpp"

namespace domkit {

GroupPtr load_cayley(const std::string& path);
GroupPtr load_cayley_stream(std::istream& in, const std::string& origin);

void save_cayley(const FiniteGroup& g, std::ostream& out);
std::string cayley_text(const FiniteGroup& g);
void save_cayley_file(const FiniteGroup& g, const std::string& path);

}  // namespace domkit
