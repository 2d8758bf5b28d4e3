// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

#include "spatialcs/common.hpp"
#include "spatialcs/geometry.hpp"
#include "spatialcs/model.hpp"

namespace spatialcs {

// Flat text formats. Every file starts with a header row naming the object
// and its dimensions; complex values are written as interleaved re,im columns
// with 17 significant digits so a write/read cycle is lossless.
//
//   complex_matrix,<rows>,<cols>
//   re(0,0),im(0,0),re(0,1),im(0,1),...
//
//   scene,<G>,<K>,<P>
//   <index>,re(k,0),im(k,0),...
//
//   positions,<M>,<N>
//   xi_0,...,xi_{M-1}
//   zeta_0,...,zeta_{N-1}

void write_complex_matrix(std::ostream& os, const CMatrix& m);
CMatrix read_complex_matrix(std::istream& is);

void write_scene(std::ostream& os, const Scene& scene);
Scene read_scene(std::istream& is);

void write_positions(std::ostream& os, const ElementPositions& pos);
ElementPositions read_positions(std::istream& is);

/// File helpers; failures raise IoError.
void save_complex_matrix(const std::string& path, const CMatrix& m);
CMatrix load_complex_matrix(const std::string& path);

}  // namespace spatialcs
