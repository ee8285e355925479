/*
 Copyright 2026 The ltviqc Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

     http://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include "ltviqc/studies/reference_plant.hpp"

namespace ltviqc {

PartitionedLtvSystem reference_plant_system(double horizon) {
  Eigen::MatrixXd A(4, 4), B(4, 2), C(2, 4), D(2, 2);
  A << -0.8, -1.3, -2.1, -2.5,
       2.0, -0.9, -8.4, 0.7,
       2.0, 8.6, -0.5, 12.5,
       2.1, -0.3, -12.6, -0.6;
  B << -0.6, 1.0,
       0.0, 0.2,
       0.0, 0.4,
       -1.3, -0.2;
  C << -1.4, 0.0, 0.5, 0.0,
       0.0, -0.1, 1.0, 0.0;
  D << -0.3, 0.0,
       0.0, 0.0;
  return PartitionedLtvSystem::FromPartition(LtvSystem::Constant(A, B, C, D, horizon), 1, 1);
}

IqcSpec reference_plant_iqc() {
  return make_unit_norm_lti_iqc(1, 10.0);
}

std::vector<double> reference_plant_horizons() { return {1, 2, 5, 10, 20, 30, 40, 50, 100}; }

}  // namespace ltviqc
