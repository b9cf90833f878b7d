// SPDX-License-Identifier: Apache-2.0
//
// rsmimo: statistics of the MIMO Rician shadowed fading channel
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "rsmimo/types.hpp"

// Oracles coded separately from the library formulas they check.
namespace rsmimo::reference {

/// kappa-mu shadowed SNR density with mean gamma_bar.
double kappa_mu_shadowed_pdf(double gamma, const SisoKappaMuParams& params);

/// E[exp(-s gamma)] of the kappa-mu shadowed SNR, s >= 0.
double kappa_mu_shadowed_laplace(double s, const SisoKappaMuParams& params);

/// ln density of the central complex Wishart W_n(p, Sigma) at W.
double central_wishart_logpdf(const HermitianMatrix<>& w, int p, const HermitianMatrix<>& sigma);

}  // namespace rsmimo::reference
