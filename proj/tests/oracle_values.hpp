/// @file oracle_values.hpp
/// Frozen reference values computed by independent high-precision evaluation
/// (30-digit arbitrary-precision arithmetic), truncated to double. Tests
/// compare the library's quadrature/differencing results against these; the
/// values must never be regenerated from the code under test.

#ifndef LOXOFORGE_TEST_ORACLE_VALUES_HPP
#define LOXOFORGE_TEST_ORACLE_VALUES_HPP

namespace oracle {

/// ln(tan(1)) — reference point for the sphere closed form at u = 2.
inline constexpr double kLnTan1 = 0.443022724116922583633626540545;

/// arcsinh(cot(0.7)) = -ln(tan(0.35)); both sides evaluated independently.
inline constexpr double kAsinhCot07 = 1.0077798604182350673;

/// gd(1.3) = 2 arctan(tanh(0.65)) = asin(tanh(1.3)).
inline constexpr double kGudermannian13 = 1.0386561395143918450;

/// Incomplete elliptic integral of the second kind E(u, -1)
/// = integral_0^u sqrt(1 + sin^2 t) dt, at u_k = k*pi/21, k = 1..20.
/// This is the arc-length coordinate xi2 of the twisted sphere profile
/// with unit pitch.
inline constexpr double kTwistedSphereXi2[20][2] = {
    {0.14959965017094253516, 0.1501533270912675408363},
    {0.29919930034188507033, 0.3035283926489403118538},
    {0.44879895051282760549, 0.4628818905524361574965},
    {0.59839860068377014066, 0.6301830762295822225804},
    {0.74799825085471267582, 0.806484624673955999587},
    {0.89759790102565521099, 0.9919474936592297838771},
    {1.0471975511965977462, 1.18595179824192948429},
    {1.1967972013675402813, 1.3872412483933328253},
    {1.3463968515384828165, 1.594073398196830622704},
    {1.4959965017094253516, 1.804365254327245607837},
    {1.6455961518803678868, 2.015832534700466410068},
    {1.795195802051310422, 2.226124390830881395201},
    {1.9447954522222529571, 2.432956540634379192605},
    {2.0943951023931954923, 2.634245990785782533615},
    {2.2439947525641380275, 2.828250295368482234028},
    {2.3935944027350805626, 3.013713164353756018318},
    {2.5431940529060230978, 3.190014712798129795324},
    {2.692793703076965633, 3.357315898475275860408},
    {2.8423933532479081681, 3.516669396378771706051},
    {2.9919930034188507033, 3.670044461936444477068}};

/// xi2(u) of the twisted pseudosphere profile with unit pitch, anchored
/// xi2(1) = 0: integral_1^u sqrt(e^{2t} - e^{-2t}) dt (hypergeometric
/// antiderivative evaluated independently).
inline constexpr double kTwistedPseudosphereXi2[5][2] = {
    {0.5, -1.040122404503343185089},
    {0.8, -0.4858685590313918666484},
    {1.2, 0.598078850025962891524},
    {1.6, 2.227808240720195300505},
    {2.0, 4.662873186649386216391}};

}  // namespace oracle

#endif  // LOXOFORGE_TEST_ORACLE_VALUES_HPP
