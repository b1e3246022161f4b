// SPDX-License-Identifier: Apache-2.0
// Generated by tests/oracle/frozen_values.py (sympy); do not edit by hand.
#pragma once

// d^alpha f for f = exp(x/2) sin y + x^2 z/(1+y^2) + sqrt(2+xyz) at (0.3,-0.7,1.1);
// alpha runs over degree 0..3, lexicographically descending within a degree.
inline constexpr double kJetPartials[] = {0.64800637766982423770, -0.22074956651742187085, 1.0751061075789770459, -0.018542452413423163846, 1.2263930973460462139, 1.3010288624887725994, 0.12235271783131438548, 0.76503526445908999982, 0.17689641994428158309, -0.0046858334554008270641, -0.13469165314682123304, 1.8071035272111507543, 1.2165213612418957176, 0.47708946145482836045, 0.83273276552199008280, -0.034298323078018678595, -1.0574775429766126000, 0.0024758888213796726742, 0.014699281319150862255, -0.00083439092054904495488};

// D(rho) for theta(rho) = x1^2 x2 + sin(y1) z + exp(x2/2) y2 on darboux5
// at (0.3, 0.4, -0.2, 0.6, 0.1), row-major.
inline constexpr double kBggDarboux5[] = {-0.40000000000000000000, 0.60000000000000000000, 0.60000000000000000000, 0.13572561270539393597};
inline constexpr double kReebDarboux5[] = {0, 0, 0, 0, 1.0000000000000000000};
// D(rho) for theta(rho) = x1^2 x2 + sin(y1) z + exp(x2/2) y2 on twisted5
// at (0.3, 0.4, -0.2, 0.6, 0.1), row-major.
inline constexpr double kBggTwisted5[] = {0.50483741803595957316, 1.0551845340786238017, 0.96307843467833529341, 0.46380280546565471136};
inline constexpr double kReebTwisted5[] = {0, 0, 0, 0, 1.0000000000000000000};
