#pragma once

#include "fockbundle/dirac.hpp"
#include "fockbundle/gerbe.hpp"

#include <json.hpp>

namespace fockbundle {

using Json = nlohmann::ordered_json;

// complex numbers are encoded as [re, im] throughout
Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j);

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j);

Json mat_to_json(const Mat& m); // nested row-major
Mat mat_from_json(const Json& j);

Json real_mat_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd real_mat_from_json(const Json& j);

Json mode_space_to_json(const ModeSpace& s);
ModeSpace mode_space_from_json(const Json& j);

Json mode_vector_to_json(const ModeVector& v);
ModeVector mode_vector_from_json(const Json& j);

Json trig_poly_to_json(const TrigPolyMatrix& f);
TrigPolyMatrix trig_poly_from_json(const Json& j);

Json nerve_to_json(const Nerve& n);
Nerve nerve_from_json(const Json& j);

Json cochain_to_json(const CircleCochain& c);
CircleCochain cochain_from_json(const Json& j);

Json divergence_report_to_json(const DivergenceReport& r);

Json implementer_to_json(const Implementer& imp);

Json clifford_word_to_json(const CliffordWord& w, const ModeSpace& space);
CliffordWord clifford_word_from_json(const Json& j);

Json fock_vector_to_json(int m, const Vec& coeffs);

} // namespace fockbundle
