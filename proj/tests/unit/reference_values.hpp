#pragma once

// Frozen reference values, generated by tests/reference/generate_reference.py
// with mpmath at 30 digits from the defining integrals (no code shared with
// the library). Model: omega0 = 1, scale = 1 unless the name says otherwise.

namespace rigged::reference {

// eta on the first sheet: EXP, lambda = 0.1, z = 1 + 0.5i; RATIONAL,
// lambda = 0.3, z = 2 - 0.25i.
inline constexpr double kEtaExpRe = 0.0025337988060015759442;
inline constexpr double kEtaExpIm = 0.5078183451905799256;
inline constexpr double kEtaRationalRe = 0.97446790941189005069;
inline constexpr double kEtaRationalIm = -0.27409134216098893575;
inline constexpr double kPoleExp05Er = 0.99924104028064147877;
inline constexpr double kPoleExp05Gamma = 0.0057931499102395838532;
inline constexpr double kPoleExp05ResRe = 1.0025160250546128097;
inline constexpr double kPoleExp05ResIm = 2.8894645798731107427e-6;
inline constexpr double kPoleExp1Er = 0.99694119425554076909;
inline constexpr double kPoleExp1Gamma = 0.023350024370237335566;
inline constexpr double kPoleExp1ResRe = 1.0102616975594228992;
inline constexpr double kPoleExp1ResIm = 0.000048286019853552057584;
inline constexpr double kPoleExp3Er = 0.97012348686525025855;
inline constexpr double kPoleExp3Gamma = 0.23061350153310697074;
inline constexpr double kPoleExp3ResRe = 1.1171766951439462394;
inline constexpr double kPoleExp3ResIm = 0.0067003120524012138489;
inline constexpr double kPoleRationalEr = 1.0025790998995082974;
inline constexpr double kPoleRationalGamma = 0.015767893051743870187;
inline constexpr double kBoundStateExp12 = -0.11871032015030054032;
inline constexpr double kDensityExp09 = 0.39192640694845107815;
inline constexpr double kOnesCoherentPairing = 2.1043619538235984106;

}  // namespace rigged::reference
