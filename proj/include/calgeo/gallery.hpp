#pragma once

#include <string>
#include <utility>
#include <vector>

#include "calgeo/exterior.hpp"
#include "calgeo/link.hpp"

namespace calgeo::gallery {

// Real part of dz1^dz2^dz3 on C^3 = R^6 with basis order e1,e2,e3,f1,f2,f3.
// Calibrates the three special Lagrangian planes e123, -e345, -e156.
AlternatingForm special_lagrangian_3form();

// e1*^e2* + e3*^e4* on R^4.
AlternatingForm kahler_sum_2form();

// Standard associative 3-form on R^7 and its Hodge-dual coassociative 4-form.
AlternatingForm associative_3form();
AlternatingForm coassociative_4form();

LinkSpec circle_spec(int resolution = 64);
LinkSpec sphere2_spec(int resolution = 32);
LinkSpec clifford_torus_spec(int resolution = 64);
LinkSpec latitude_spec(int resolution = 64, double z0 = 0.5);
// union of the three special Lagrangian great 2-spheres in S^5
LinkSpec sl_union_spec(int resolution = 16);

const std::vector<SimpleVector>& sl_planes();  // the three planes of the union

// Writes every shipped fixture (forms, links, manifests) into dir; returns
// (name, filename) pairs.
std::vector<std::pair<std::string, std::string>> write_all(const std::string& dir);
std::vector<std::string> catalog();

}  // namespace calgeo::gallery
