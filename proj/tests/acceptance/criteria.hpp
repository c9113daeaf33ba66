#ifndef EXTREC_ACCEPTANCE_CRITERIA_HPP
#define EXTREC_ACCEPTANCE_CRITERIA_HPP

#include <string>

namespace acceptance {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome inference_example();      // AC1
Outcome unification_example();    // AC2
Outcome equality_example();       // AC3
Outcome kinding_example();        // AC4
Outcome derivation_example();     // AC5
Outcome soundness_property();     // AC6
Outcome mgu_property();           // AC7
Outcome rewriting_properties();   // AC8
Outcome negative_suite();         // AC9
Outcome evaluation_soundness();   // AC10
Outcome parser_round_trip();      // AC11

}  // namespace acceptance

#endif  // EXTREC_ACCEPTANCE_CRITERIA_HPP
