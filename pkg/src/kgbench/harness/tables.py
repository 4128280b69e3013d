"""Embedded specifications and published values of the benchmark tables.

Tables are addressed by integer number (1..20) or by label.  Row keys are
the exponent k of eps = 2^-k, except in the method-comparison tables where
rows are scheme ids.  ``None`` marks a cell published as unstable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

TAU0 = 0.2

PUBLISHED = {
    'spaceFD': {
        0: (0.31, 0.0837, 0.0209, 0.00531, 0.00124, 0.000311),
        1: (0.426, 0.119, 0.0311, 0.00792, 0.00183, 0.000458),
        2: (0.667, 0.216, 0.0571, 0.0141, 0.0033, 0.000826),
        3: (0.905, 0.277, 0.0758, 0.0198, 0.00446, 0.00111),
        4: (0.848, 0.3, 0.0837, 0.0221, 0.00511, 0.00121),
    },
    'spaceAPFP1': {
        0: (0.953, 1.49, 1.44, 1.44, 1.44),
        2: (0.942, 0.48, 0.506, 0.505, 0.505),
        4: (0.748, 0.304, 0.0539, 0.0538, 0.0538),
        6: (1.1, 0.498, 0.0198, 0.00329, 0.00329),
        8: (1.08, 0.489, 0.0176, 0.000207, 0.000207),
        10: (0.974, 0.345, 0.0257, 2.11e-5, 1.33e-5),
        12: (1.04, 0.474, 0.0154, 6.77e-6, 8.17e-7),
        14: (0.731, 0.252, 0.0106, 1.34e-5, 7.69e-8),
    },
    'spaceAPFP2': {
        0: (0.741, 10.2, 12.9, 14.2, 14.2),
        2: (0.884, 0.607, 0.586, 0.65, 0.65),
        4: (0.751, 0.277, 0.0254, 0.00977, 0.00977),
        6: (1.1, 0.497, 0.019, 6.46e-5, 6.38e-5),
        8: (1.08, 0.489, 0.0176, 7.03e-6, 2.39e-7),
        10: (0.974, 0.346, 0.0257, 1.66e-5, 6.24e-9),
        12: (1.04, 0.474, 0.0154, 6.73e-6, 7.2e-9),
        14: (0.731, 0.252, 0.0106, 1.34e-5, 4.41e-9),
    },
    'spaceMTI': {
        0: (0.588, 0.21, 0.00961, 7.58e-6, 1.61e-11),
        1: (0.588, 0.452, 0.0237, 1.7e-5, 1.63e-11),
        2: (0.899, 0.46, 0.0305, 1.29e-5, 1.61e-11),
        3: (0.707, 0.157, 0.00735, 6.05e-6, 8.31e-12),
        4: (0.758, 0.276, 0.026, 1.72e-5, 7.75e-12),
        5: (1.12, 0.466, 0.0243, 1.55e-5, 9.33e-12),
        8: (1.08, 0.49, 0.0164, 7.58e-6, 6.56e-12),
        11: (0.735, 0.232, 0.0164, 1.66e-5, 7.29e-12),
    },
    'spaceTSF1': {
        0: (0.451, 0.201, 0.0147, 4.21e-5, 9.05e-10),
        1: (0.416, 0.132, 0.00433, 1.92e-6, 1.08e-12),
        2: (0.633, 0.127, 0.000746, 2.59e-8, 1.34e-11),
        3: (0.622, 0.11, 1.44e-5, 2.34e-12, 4.45e-13),
        4: (0.814, 0.0984, 3.7e-7, 4.12e-13, 4.12e-13),
        5: (0.933, 0.113, 3.22e-8, 5.14e-13, 3.74e-13),
        8: (1.07, 0.0916, 5.48e-12, 4.56e-13, 2.91e-13),
        11: (0.724, 0.106, 5.18e-13, 3.07e-13, 2.64e-13),
    },
    'ECFD': {
        0: (0.29, 0.00679, 0.000115, 1.81e-6, 3.57e-8),
        1: (2.73, 0.0713, 0.00115, 2.04e-5, 3.47e-7),
        2: (3.16, 2.32, 0.039, 0.000628, 1.51e-5),
        3: (6.22, 3.23, 1.73, 0.0271, 0.000428),
        4: (4.03, 7.3, 7.01, 1.61, 0.026),
    },
    'SIFD': {
        0: (0.242, 0.00546, 9.27e-5, 1.72e-6, 3.5e-8),
        1: (2.28, 0.0583, 0.000967, 2.11e-5, 3.51e-7),
        2: (4.06, 2.07, 0.0339, 0.000563, 8.88e-6),
        3: (6.05, 2.67, 1.67, 0.0266, 0.000414),
        4: (4.05, 6.78, 7.07, 1.6, 0.026),
    },
    'LFFD': {
        0: (0.229, 0.00394, 6.22e-5, 9.78e-7, 3.07e-8),
        1: (0.605, 0.00905, 0.000145, 2.27e-6, 1.68e-8),
        2: (None, 0.312, 0.00493, 7.13e-5, 1.24e-6),
        3: (None, None, 0.238, 0.00356, 6.22e-5),
        4: (None, None, 2.68, 0.235, 0.00364),
    },
    'GIFP': {
        0: (0.0141, 0.000814, 5.07e-5, 3.09e-6, 1.62e-7, 1.06e-8),
        1: (0.111, 0.0044, 0.000275, 1.72e-5, 1.07e-6, 6.79e-8),
        2: (2.47, 0.0656, 0.0039, 0.000242, 1.51e-5, 9.5e-7),
        3: (0.673, 2.82, 0.0662, 0.004, 0.000251, 1.56e-5),
        4: (0.95, 0.928, 2.67, 0.0673, 0.004, 0.000249),
        5: (0.996, 1.05, 1.11, 3.87, 0.0634, 0.0037),
    },
    'DIFP': {
        0: (0.00849, 0.000512, 3.19e-5, 2e-6, 1.24e-7, 7.64e-9),
        1: (0.086, 0.0032, 0.000197, 1.23e-5, 7.69e-7, 4.73e-8),
        2: (0.718, 0.0215, 0.00111, 6.9e-5, 4.31e-6, 2.65e-7),
        3: (0.639, 0.639, 0.00505, 0.000274, 1.7e-5, 1.05e-6),
        4: (0.684, 0.258, 0.256, 0.00132, 7.18e-5, 4.39e-6),
        5: (0.764, 0.0503, 0.0577, 0.0588, 0.000389, 2.94e-5),
    },
    'APFP1': {
        0: (1.44, 1.44, 1.44, 1.44, 1.44, 1.44),
        2: (0.505, 0.505, 0.505, 0.505, 0.505, 0.505),
        4: (0.0711, 0.0537, 0.0537, 0.0537, 0.0537, 0.0537),
        6: (0.0406, 0.0034, 0.00329, 0.00329, 0.00329, 0.00329),
        8: (0.04, 0.00107, 0.000212, 0.000207, 0.000207, 0.000207),
        10: (0.0419, 0.00111, 7.03e-5, 1.44e-5, 1.33e-5, 1.33e-5),
        12: (0.04, 0.00105, 6.38e-5, 4e-6, 8.33e-7, 8.16e-7),
        14: (0.0413, 0.000943, 5.76e-5, 3.6e-6, 2.38e-7, 7.82e-8),
    },
    'APFP2': {
        0: (12.4, 13.3, 14.1, 14.1, 14.1, 14.1),
        2: (0.118, 0.64, 0.607, 0.647, 0.65, 0.65),
        4: (0.0701, 0.00652, 0.00946, 0.00975, 0.00977, 0.00977),
        5: (0.0462, 0.00101, 0.00101, 0.00107, 0.00107, 0.00107),
        6: (0.0411, 0.00105, 4.99e-5, 6.11e-5, 6.36e-5, 6.38e-5),
        7: (0.0426, 0.00108, 6.39e-5, 3.15e-6, 3.63e-6, 3.8e-6),
        8: (0.04, 0.00107, 6.48e-5, 3.89e-6, 1.93e-7, 2.31e-7),
        9: (0.0414, 0.00113, 6.9e-5, 4.3e-6, 2.6e-7, 1.41e-8),
    },
    'MTI': {
        0: (0.19, 0.0198, 0.00149, 9.73e-5, 6.16e-6, 3.82e-7),
        1: (0.163, 0.0119, 0.000826, 5.26e-5, 3.3e-6, 2.04e-7),
        2: (0.163, 0.0322, 0.00262, 0.000163, 1.01e-5, 6.28e-7),
        3: (0.101, 0.0368, 0.00622, 0.000513, 3.23e-5, 2e-6),
        4: (0.0967, 0.013, 0.00962, 0.0016, 0.000132, 8.26e-6),
        5: (0.095, 0.00622, 0.00277, 0.00262, 0.000503, 3.86e-5),
        7: (0.0956, 0.00561, 0.00043, 0.000119, 0.000162, 0.000169),
        9: (0.0944, 0.00548, 0.000343, 2.06e-5, 1.19e-6, 3.51e-6),
        11: (0.0967, 0.0056, 0.000348, 2.19e-5, 1.66e-6, 1.67e-7),
        13: (0.095, 0.00548, 0.00034, 2.12e-5, 1.29e-6, 7.35e-8),
        15: (0.095, 0.0055, 0.000341, 2.13e-5, 1.33e-6, 8.6e-8),
        'einf': (0.19, 0.0368, 0.00962, 0.00262, 0.000503, 0.000169),
    },
    'TSF1': {
        0: (0.107, 0.0305, 0.00792, 0.00201, 0.000504, 0.000126),
        1: (0.0888, 0.0418, 0.017, 0.00518, 0.00138, 0.000353),
        2: (0.0639, 0.017, 0.00735, 0.00476, 0.00214, 0.000696),
        3: (0.0843, 0.0198, 0.00504, 0.00144, 0.00069, 0.000475),
        4: (0.0967, 0.0215, 0.00528, 0.00132, 0.000338, 9.79e-5),
        5: (0.0905, 0.0198, 0.00496, 0.00124, 0.000311, 7.81e-5),
        8: (0.0961, 0.0203, 0.00508, 0.00127, 0.000322, 8.48e-5),
        11: (0.101, 0.022, 0.00545, 0.00136, 0.00034, 8.48e-5),
        'einf': (0.107, 0.0418, 0.017, 0.00518, 0.00214, 0.000696),
    },
    'TSF2': {
        0: (0.0186, 0.00118, 7.35e-5, 4.57e-6, 2.84e-7, 1.67e-8),
        1: (0.0345, 0.00525, 0.000344, 2.15e-5, 1.35e-6, 8.26e-8),
        2: (0.0294, 0.00282, 0.000916, 8.77e-5, 5.47e-6, 3.39e-7),
        3: (0.0243, 0.00101, 0.0002, 7.07e-5, 1.15e-5, 7.35e-7),
        4: (0.0334, 0.000594, 7.47e-5, 1.39e-5, 1.28e-6, 5.94e-7),
        5: (0.0373, 0.000543, 3.54e-5, 5.12e-6, 1e-6, 8.14e-8),
        8: (0.0385, 0.000525, 3.11e-5, 1.94e-6, 1.21e-7, 7.81e-9),
        11: (0.0379, 0.000525, 2.82e-5, 1.76e-6, 1.1e-7, 6.39e-9),
        'einf': (0.0385, 0.00525, 0.000916, 8.77e-5, 1.15e-5, 7.35e-7),
    },
    'IEI': {
        0: (0.0543, 0.00358, 0.000245, 1.57e-5, 9.84e-7, 6.11e-8),
        1: (0.0243, 0.00216, 0.00014, 8.77e-6, 5.48e-7, 3.43e-8),
        2: (0.119, 0.00236, 0.000136, 8.43e-6, 5.27e-7, 3.26e-8),
        3: (0.0571, 0.017, 8.48e-5, 4.75e-6, 2.91e-7, 1.35e-8),
        4: (0.0362, 0.00531, 0.00147, 4.61e-6, 3.43e-7, 1.67e-8),
        5: (0.0368, 0.000673, 6.11e-5, 1.51e-5, 3.26e-7, 2.12e-8),
        8: (0.0385, 0.000707, 4.19e-5, 2.58e-6, 1.57e-7, 7.81e-9),
        11: (0.0385, 0.000696, 4.21e-5, 2.62e-6, 1.62e-7, 7.58e-9),
        'einf': (0.119, 0.017, 0.00147, 1.57e-5, 9.84e-7, 6.11e-8),
    },
    'MTI2': {
        0: (0.0565, 0.00391, 0.000247, 1.54e-5, 9.6e-7, 5.44e-8),
        1: (0.0935, 0.00888, 0.00054, 3.34e-5, 2.08e-6, 1.31e-7),
        2: (0.133, 0.0213, 0.00115, 7.02e-5, 4.34e-6, 2.68e-7),
        3: (0.21, 0.0135, 0.002, 9.72e-5, 5.83e-6, 3.59e-7),
        4: (0.245, 0.0155, 0.000977, 0.000138, 6.66e-6, 3.97e-7),
        5: (0.262, 0.0159, 0.000997, 6.23e-5, 8.88e-6, 4.31e-7),
        8: (0.264, 0.0162, 0.001, 6.28e-5, 3.94e-6, 2.48e-7),
        11: (0.258, 0.0164, 0.00101, 6.33e-5, 3.94e-6, 2.45e-7),
        'einf': (0.264, 0.0213, 0.002, 0.000138, 8.88e-6, 4.31e-7),
    },
    'comp1': {
        'ewi-fp': (0.0141, 0.000814, 5.07e-5, 3.09e-6, 1.62e-7, 1.06e-8),
        'ts-fp': (0.00849, 0.000512, 3.19e-5, 2e-6, 1.24e-7, 7.64e-9),
        'li-fp2': (12.4, 13.3, 14.1, 14.1, 14.1, 14.1),
        'mti-fp': (0.19, 0.0198, 0.00149, 9.73e-5, 6.16e-6, 3.82e-7),
        'tsf-fp2': (0.0186, 0.00118, 7.35e-5, 4.57e-6, 2.84e-7, 1.67e-8),
        'iei-fp': (0.0543, 0.00358, 0.000245, 1.57e-5, 9.84e-7, 6.11e-8),
        'mti-fp2': (0.0565, 0.00391, 0.000247, 1.54e-5, 9.6e-7, 5.44e-8),
    },
    'comp2': {
        'ewi-fp': (0.997, 1.12, 1.18, 1.2, 1.22, 1.21),
        'ts-fp': (0.639, 0.307, 0.00848, 0.00565, 0.00622, 0.000203),
        'li-fp2': (0.0415, 0.000945, 5.77e-5, 3.6e-6, 2.27e-7, 1.63e-8),
        'mti-fp': (0.0967, 0.0056, 0.000348, 2.19e-5, 1.66e-6, 1.67e-7),
        'tsf-fp2': (0.0379, 0.000525, 2.82e-5, 1.76e-6, 1.1e-7, 6.39e-9),
        'iei-fp': (0.0385, 0.000696, 4.21e-5, 2.62e-6, 1.62e-7, 7.58e-9),
        'mti-fp2': (0.258, 0.0164, 0.00101, 6.33e-5, 3.94e-6, 2.45e-7),
    },
    'comp3': {
        'ewi-fp': (0.0141, 0.00442, 0.00388, 0.00401, 0.00399, 0.00374),
        'ts-fp': (0.00848, 0.0032, 0.00111, 0.000274, 7.18e-5, 2.94e-5),
        'li-fp2': (12.4, 3.16, 0.647, 0.118, 0.00977, 0.00107),
        'mti-fp': (0.19, 0.0119, 0.00262, 0.000512, 0.000132, 3.86e-5),
        'tsf-fp2': (0.0187, 0.00525, 0.000916, 7.07e-5, 1.28e-6, 8.14e-8),
        'iei-fp': (0.0541, 0.00216, 0.000136, 4.75e-6, 3.44e-7, 2.14e-8),
        'mti-fp2': (0.0564, 0.00887, 0.00115, 9.72e-5, 6.66e-6, 4.31e-7),
    },
}

# Properties of each scheme as published (non-numeric table).
PROPERTIES = {
    "lffd": dict(symmetric=True, energy=False, uncond_stable=False, explicit=True, order_t=2,
                 space="2nd", memory="O(N)", cost="O(N)", small_eps_tau="O(eps^3)", ua=False, uoa=False),
    "sifd": dict(symmetric=True, energy=False, uncond_stable=False, explicit=False, order_t=2,
                 space="2nd", memory="O(N)", cost="O(N)", small_eps_tau="O(eps^3)", ua=False, uoa=False),
    "cnfd": dict(symmetric=True, energy=True, uncond_stable=False, explicit=False, order_t=2,
                 space="2nd", memory="O(N)", cost=">>O(N)", small_eps_tau="O(eps^3)", ua=False, uoa=False),
    "ewi-fp": dict(symmetric=True, energy=False, uncond_stable=True, explicit=True, order_t=2,
                   space="spectral", memory="O(N)", cost="O(N log N)", small_eps_tau="O(eps^2)",
                   ua=False, uoa=False),
    "ts-fp": dict(symmetric=True, energy=False, uncond_stable=True, explicit=True, order_t=2,
                  space="spectral", memory="O(N)", cost="O(N log N)", small_eps_tau="O(1)",
                  ua=False, uoa=False),
    "li-fp1": dict(symmetric=True, energy=False, uncond_stable=True, explicit=True, order_t=2,
                   space="spectral", memory="O(N)", cost="O(N log N)", small_eps_tau="O(1)",
                   ua=False, uoa=False),
    "li-fp2": dict(symmetric=True, energy=False, uncond_stable=True, explicit=True, order_t=2,
                   space="spectral", memory="O(N)", cost="O(N log N)", small_eps_tau="O(1)",
                   ua=False, uoa=False),
    "mti-fp": dict(symmetric=False, energy=False, uncond_stable=True, explicit=True, order_t=2,
                   space="spectral", memory="O(N)", cost="O(N log N)", small_eps_tau="O(1)",
                   ua=True, uoa=False),
    "tsf-fp1": dict(symmetric=False, energy=False, uncond_stable=True, explicit=True, order_t=1,
                    space="spectral", memory="O(N_xi N)", cost="O(N_xi N log N)",
                    small_eps_tau="O(1)", ua=True, uoa=False),
    "tsf-fp2": dict(symmetric=False, energy=False, uncond_stable=True, explicit=True, order_t=2,
                    space="spectral", memory="O(N_xi N)", cost="O(N_xi N log N)",
                    small_eps_tau="O(1)", ua=True, uoa=False),
    "iei-fp": dict(symmetric=False, energy=False, uncond_stable=True, explicit=True, order_t=2,
                   space="spectral", memory="O(N)", cost="O(N log N)", small_eps_tau="O(1)",
                   ua=True, uoa=True),
    "mti-fp2": dict(symmetric=False, energy=False, uncond_stable=True, explicit=True, order_t=2,
                    space="spectral", memory="O(N)", cost="O(N log N)", small_eps_tau="O(1)",
                    ua=True, uoa=True),
}


@dataclass(frozen=True)
class TableSpec:
    """How to regenerate one table.

    ``axis`` is the quantity varied along a row: ``tau``, ``h``, ``xi``
    (number of xi points), ``lffd`` (column index of the LFFD mesh rule)
    or ``diagonal`` (column j pairs eps = 2^-j with tau = tau0/4^j).
    ``tau`` is the stated fixed step of a spatial table; ``desk_tau`` is
    the step actually used unless a verbatim replay is requested.
    ``reference`` is ``true`` (independent reference solution) or
    ``self`` (same scheme and step on a refined grid).
    """

    label: str
    title: str
    axis: str
    schemes: tuple[str, ...]
    rows: tuple
    columns: tuple
    eps: float | None = None
    tau: float | None = None
    desk_tau: float | None = None
    h: float = 1.0 / 8
    xi_points: int | None = None
    reference: str = "true"
    self_ref: float | int | None = None
    has_einf: bool = False
    published: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def comparison(self) -> bool:
        return len(self.schemes) > 1

    def row_eps(self, key) -> float:
        return self.eps if self.comparison else 2.0 ** -key

    def row_scheme(self, key) -> str:
        return key if self.comparison else self.schemes[0]

    def step(self, verbatim: bool = False) -> float | None:
        if verbatim or self.desk_tau is None:
            return self.tau
        return self.desk_tau

    def column_labels(self) -> list[str]:
        if self.axis == "tau":
            return [f"tau={c:.6g}" for c in self.columns]
        if self.axis == "h":
            return [f"h={c:.6g}" for c in self.columns]
        if self.axis == "xi":
            return [f"N_xi={c}" for c in self.columns]
        if self.axis == "lffd":
            return [f"j={c}" for c in self.columns]
        return [f"eps=2^-{j},tau={c:.6g}" for j, c in enumerate(self.columns)]

    def published_rows(self) -> dict:
        return {k: v for k, v in self.published.items() if k != "einf"}

    def published_einf(self):
        return self.published.get("einf")


def _taus(base: int, n: int) -> tuple[float, ...]:
    return tuple(TAU0 / base**j for j in range(n))


def _spec(label, title, axis, schemes, rows, columns, **kw) -> TableSpec:
    if isinstance(schemes, str):
        schemes = (schemes,)
    pub = PUBLISHED[label]
    return TableSpec(label, title, axis, tuple(schemes), tuple(rows), tuple(columns),
                     has_einf="einf" in pub, published=pub, **kw)


_FINE_ROWS = (0, 1, 2, 3, 4, 5, 8, 11)
_EVEN_ROWS = (0, 2, 4, 6, 8, 10, 12, 14)
_COMP = ("ewi-fp", "ts-fp", "li-fp2", "mti-fp", "tsf-fp2", "iei-fp", "mti-fp2")
_SPACE_SPECTRAL = (2.0, 1.0, 0.5, 0.25, 0.125)

TABLES: dict[str, TableSpec] = {t.label: t for t in [
    _spec("spaceFD", "CNFD spatial error", "h", "cnfd", range(5),
          tuple(0.5 / 2**j for j in range(6)), tau=1e-5),
    _spec("spaceAPFP1", "LI-FP1 spatial error", "h", "li-fp1", _EVEN_ROWS, _SPACE_SPECTRAL,
          tau=1e-7, desk_tau=5e-5),
    _spec("spaceAPFP2", "LI-FP2 spatial error", "h", "li-fp2", _EVEN_ROWS, _SPACE_SPECTRAL,
          tau=1e-7, desk_tau=5e-5),
    _spec("spaceMTI", "MTI-FP spatial error", "h", "mti-fp", _FINE_ROWS, _SPACE_SPECTRAL,
          tau=1e-7, desk_tau=1e-3, reference="self", self_ref=1.0 / 16),
    _spec("spaceTSF1", "TSF-FP1 error in xi", "xi", "tsf-fp1", _FINE_ROWS, (2, 4, 8, 16, 32),
          tau=1e-7, desk_tau=1e-3, h=1.0 / 16, reference="self", self_ref=64),
    _spec("ECFD", "CNFD temporal error", "tau", "cnfd", range(5), _taus(8, 5), h=1.0 / 1024),
    _spec("SIFD", "SIFD temporal error", "tau", "sifd", range(5), _taus(8, 5), h=1.0 / 1024),
    _spec("LFFD", "LFFD temporal error under the mesh rule", "lffd", "lffd", range(5),
          range(5), h=None),
    _spec("GIFP", "EWI-FP temporal error", "tau", "ewi-fp", range(6), _taus(4, 6)),
    _spec("DIFP", "TS-FP temporal error", "tau", "ts-fp", range(6), _taus(4, 6)),
    _spec("APFP1", "LI-FP1 temporal error", "tau", "li-fp1", _EVEN_ROWS, _taus(4, 6)),
    _spec("APFP2", "LI-FP2 temporal error", "tau", "li-fp2", (0, 2, 4, 5, 6, 7, 8, 9),
          _taus(4, 6)),
    _spec("MTI", "MTI-FP temporal error", "tau", "mti-fp", (0, 1, 2, 3, 4, 5, 7, 9, 11, 13, 15),
          _taus(4, 6)),
    _spec("TSF1", "TSF-FP1 temporal error", "tau", "tsf-fp1", _FINE_ROWS, _taus(4, 6),
          xi_points=64),
    _spec("TSF2", "TSF-FP2 temporal error", "tau", "tsf-fp2", _FINE_ROWS, _taus(4, 6),
          xi_points=64),
    _spec("IEI", "IEI-FP temporal error", "tau", "iei-fp", _FINE_ROWS, _taus(4, 6)),
    _spec("MTI2", "MTI-FP2 temporal error", "tau", "mti-fp2", _FINE_ROWS, _taus(4, 6)),
    _spec("comp1", "method comparison at eps=1", "tau", _COMP, _COMP, _taus(4, 6), eps=1.0,
          xi_points=32),
    _spec("comp2", "method comparison at eps=2^-11", "tau", _COMP, _COMP, _taus(4, 6),
          eps=2.0**-11, xi_points=8),
    _spec("comp3", "method comparison with tau = O(eps^2)", "diagonal", _COMP, _COMP,
          _taus(4, 6), xi_points=32),
]}

PROPERTIES_NUMBER = 17

NUMBERS: dict[int, str] = {
    1: "spaceFD", 2: "spaceAPFP1", 3: "spaceAPFP2", 4: "spaceTSF1", 5: "ECFD", 6: "SIFD",
    7: "LFFD", 8: "GIFP", 9: "DIFP", 10: "APFP1", 11: "APFP2", 12: "MTI", 13: "TSF1",
    14: "TSF2", 15: "IEI", 16: "MTI2", 17: "properties", 18: "comp1", 19: "comp2", 20: "comp3",
}

_LABEL_ALIASES = {"ewi": "GIFP", "ts": "DIFP", "li1": "APFP1", "li2": "APFP2",
                  "cnfd": "ECFD", "mti2": "MTI2", "iei": "IEI", "mti": "MTI"}


def lookup(ref) -> str:
    """Resolve a table number or label (case-insensitive) to its label."""
    if isinstance(ref, int) or (isinstance(ref, str) and ref.strip().isdigit()):
        n = int(ref)
        if n not in NUMBERS:
            raise KeyError(f"table number must be in 1..20, got {n}")
        return NUMBERS[n]
    key = str(ref).strip()
    low = {k.lower(): k for k in list(TABLES) + ["properties"]}
    if key.lower() in low:
        return low[key.lower()]
    if key.lower() in _LABEL_ALIASES:
        return _LABEL_ALIASES[key.lower()]
    raise KeyError(f"unknown table {ref!r}; known labels: {sorted(TABLES)}")


def get_table(ref) -> TableSpec:
    label = lookup(ref)
    if label == "properties":
        raise KeyError("the properties table has no numeric spec; see PROPERTIES")
    return TABLES[label]


def tolerance(value: float) -> float:
    """Relative tolerance used when comparing against a published cell."""
    v = abs(value)
    if v >= 1e-3:
        return 0.15
    if v >= 1e-6:
        return 0.25
    return 0.50
