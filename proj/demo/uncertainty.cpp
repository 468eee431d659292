// Encodes a wind farm and a triangular fuzzy load as DS structures, combines them,
// and prints the P-box of the net injection at a few probability levels.
#include <iostream>

#include "ucds/ds/arithmetic.hpp"
#include "ucds/ds/encode.hpp"

int main() {
  using namespace ucds::ds;
  WeibullWindFarm wind;
  wind.turbineRating = 56.0;
  const DSStructure w = encode(InputParameters{wind}, 100);
  const DSStructure load = encode(InputParameters{TriangularInput{15.0, 20.0, 28.0}}, 100);

  const PBox net = toPBox(combineIndependent(w, load, BinaryOp::Sub, 100));
  std::cout << "wind - load, support [" << net.supportMin() << ", " << net.supportMax() << "] MW\n";
  for (double p : {0.1, 0.25, 0.5, 0.75, 0.9})
    std::cout << "p=" << p << "  quantile in [" << net.leftQuantile(p) << ", " << net.rightQuantile(p) << "]\n";

  const PBox dep = convolveDependent(toPBox(w), toPBox(load), BinaryOp::Sub, Dependence::Unknown, 100);
  std::cout << "unknown dependence, width at p=0.5: " << dep.widthAt(0.5) << " MW (independent: " << net.widthAt(0.5)
            << ")\n";
}
