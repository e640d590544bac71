#pragma once

// Generated by tests/oracles/compute_oracles.py (mpmath, 40 digits). Do not edit.

namespace oracle {

inline constexpr double lgamma_half = 0.5723649429247000870717;
inline constexpr double lgamma_7_3 = 0.1744904307114383967085;
inline constexpr double x_alpha2_half_pi = -0.2570787221094177693094;
inline constexpr double t_alpha2_half_pi = 0.2098765432098766083865;
inline constexpr double x_alpha3_theta1_1 = -0.02980440932757020183384;
inline constexpr double x_for_p8 = -0.2570787221094177898983;
inline constexpr double p_a2_b05_bm03_n8_xhalfpi = 0.002940526381187692236331;
inline constexpr double p_a15_n20_x03 = -0.0009747849302671353467542;
inline constexpr double p_a4_a12_bm05_n12_xm04 = -3.171291152577562271312e-7;
inline constexpr double p_a1_a05_bm03_n7_x03 = -0.07296319851131203378753;
inline constexpr double p_a3_a23_b07_n25_x055 = 0.000007562375657886485105566;
inline constexpr double contour_a2_a05_bm03_n8_halfpi = 0.002940526381187692254711;
inline constexpr double contour_a4_a12_bm05_n12_2pi5 = -7.864517018862718440726e-7;
inline constexpr double jacobi_4_1_1_x02 = 0.2959999999999999658051;
inline constexpr double jacobi_6_0_0_x05 = 0.3232421875;
inline constexpr double beta_moment_a05_b0 = 1.885618083164126731736;
inline constexpr double beta_moment_am095_bm09 = 16.52051551468154249353;
inline constexpr double m_a2_a05_bm03_2pi5_re = 0.7681305082617050691793;
inline constexpr double m_a2_a05_bm03_2pi5_im = -0.1959216861590355953282;
inline constexpr double rho_a2_2pi5 = 0.6180339887498948555366;
inline constexpr double f_second_a2_2pi5_re = -1.302138883181576039988;
inline constexpr double f_second_a2_2pi5_im = 0.304419830020121075108;
inline constexpr double f_a2_pi3_phi1_re = -0.4283039848063598254826;
inline constexpr double f_a2_pi3_phi1_im = 1.047898378281470540043;
inline constexpr double phi0_alpha2 = 1.706833775085767059722;
inline constexpr double phi0_alpha4 = 1.805189838932316453218;
inline constexpr double phi0_alpha05 = 1.421444722633559065655;

}  // namespace oracle
