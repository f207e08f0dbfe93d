#include "hkcob/version.hpp"

#include <cstdio>

namespace hkcob {

std::string conventions_text(const std::string& correction_name) {
  return std::string("engine=") + kEngineVersion +
         ";nakajima=[q_m(a),q_n(b)]=m*delta_{m+n,0}*int(ab)"
         ";integral=coefficient of q_1(pt)^n|0>"
         ";correction_s=" + correction_name +
         ";chi_y=x(1+y)/(1-exp(-x(1+y)))-xy"
         ";kummer_chi_index=N=n+1"
         ";partition_order=size,then reverse-lex"
         ";k3_lattice=U^3+E8(-1)^2"
         ";ch_keys=k-partitions of n for ch_2k";
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string conventions_hash(const std::string& correction_name) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(conventions_text(correction_name))));
  return buf;
}

}  // namespace hkcob
