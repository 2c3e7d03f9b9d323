#pragma once

#include <string>
#include <vector>

#include "cyops/rational.hpp"

namespace reference {

struct SevenFamily {
  const char* name;
  std::vector<const char*> q;        // coefficients of z^2..z^5 in q(z)
  std::vector<const char*> lambert;  // N_(1,d,4), d = 1..5
};

inline const std::vector<SevenFamily>& seven_families() {
  static const std::vector<SevenFamily> v = {
      {"R1",
       {"7040", "67555904", "747082784768", "8968272297124128"},
       {"768", "-136800", "35597568", "-5313408000", "-6059212935936"}},
      {"R2",
       {"1152", "2150976", "4983447552", "13054714896672"},
       {"256", "45504", "20254464", "14135932800", "12870108663552"}},
      {"R3",
       {"5562", "49552317", "547802062578", "6855142017357054"},
       {"1485", "9853515/8", "2555194005", "8549298943740", "37455896889425700"}},
      {"R4",
       {"72576", "8462979648", "1230038144557056", "203018472128017391904"},
       {"29440", "277414560", "7671739956480", "346114703998149120", "20536396999367861894400"}},
      {"R5",
       {"20200320", "689499895026240", "29916247864887732510720", "1488739080271271648779215102240"},
       {"17342208", "42976872163296", "380850322188446486784", "5581133974953140362085043072",
        "108045504354230644224717527051669760"}},
  };
  return v;
}

inline cyops::Rational value(const char* s) { return cyops::parse_rational(s); }

}  // namespace reference
