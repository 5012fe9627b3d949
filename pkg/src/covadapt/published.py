"""Published reference values used by the ``reproduce`` targets.

Keys are factor-level tuples. Table A1 entries map an agreement pattern
(one 0/1 flag per factor) to ``(theoretical, simulated)``; the simulated
column is ``None`` for configurations whose printed rows are misaligned.
Tables A2-A4 map levels to ``(sigma2, lambda_max, sigma2 * lambda_max)``.
"""

TABLE_A1 = {
    (2, 2, 2, 2): {
        (0, 0, 0, 0): (0.27273, 0.26202),
        (0, 0, 0, 1): (0.09091, 0.09513),
        (0, 0, 1, 0): (0.09091, 0.08669),
        (0, 0, 1, 1): (-0.09091, -0.08652),
        (0, 1, 0, 0): (0.09091, 0.10398),
        (0, 1, 0, 1): (-0.09091, -0.09772),
        (0, 1, 1, 0): (-0.09091, -0.08703),
        (0, 1, 1, 1): (-0.27273, -0.27691),
        (1, 0, 0, 0): (0.09091, 0.09037),
        (1, 0, 0, 1): (-0.09091, -0.08661),
        (1, 0, 1, 0): (-0.09091, -0.09116),
        (1, 0, 1, 1): (-0.27273, -0.27029),
        (1, 1, 0, 0): (-0.09091, -0.09152),
        (1, 1, 0, 1): (-0.27273, -0.27601),
        (1, 1, 1, 0): (-0.27273, -0.27370),
    },
    (2, 2, 2, 3): {
        (0, 0, 0, 0): (0.16667, 0.16605),
        (0, 0, 0, 1): (0.00000, -0.00291),
        (0, 0, 1, 0): (0.05556, 0.05365),
        (0, 0, 1, 1): (-0.11111, -0.11785),
        (0, 1, 0, 0): (0.05556, 0.05686),
        (0, 1, 0, 1): (-0.11111, -0.10378),
        (0, 1, 1, 0): (-0.05556, -0.05517),
        (0, 1, 1, 1): (-0.22222, -0.21845),
        (1, 0, 0, 0): (0.05556, 0.05443),
        (1, 0, 0, 1): (-0.11111, -0.10632),
        (1, 0, 1, 0): (-0.05556, -0.04866),
        (1, 0, 1, 1): (-0.22222, -0.22404),
        (1, 1, 0, 0): (-0.05556, -0.05818),
        (1, 1, 0, 1): (-0.22222, -0.22552),
        (1, 1, 1, 0): (-0.16667, -0.16921),
    },
    (2, 2, 2, 4): {
        (0, 0, 0, 0): (0.12000, 0.12181),
        (0, 0, 0, 1): (-0.04000, -0.04067),
        (0, 0, 1, 0): (0.04000, 0.03854),
        (0, 0, 1, 1): (-0.12000, -0.12218),
        (0, 1, 0, 0): (0.04000, 0.03742),
        (0, 1, 0, 1): (-0.12000, -0.12094),
        (0, 1, 1, 0): (-0.04000, -0.03778),
        (0, 1, 1, 1): (-0.20000, -0.19634),
        (1, 0, 0, 0): (0.04000, 0.04081),
        (1, 0, 0, 1): (-0.12000, -0.11607),
        (1, 0, 1, 0): (-0.04000, -0.04056),
        (1, 0, 1, 1): (-0.20000, -0.20304),
        (1, 1, 0, 0): (-0.04000, -0.04099),
        (1, 1, 0, 1): (-0.20000, -0.19964),
        (1, 1, 1, 0): (-0.12000, -0.11943),
    },
    (2, 2, 2, 5): {
        (0, 0, 0, 0): (0.09375, 0.09389),
        (0, 0, 0, 1): (-0.06250, -0.06292),
        (0, 0, 1, 0): (0.03125, 0.03160),
        (0, 0, 1, 1): (-0.12500, -0.12186),
        (0, 1, 0, 0): (0.03125, 0.03078),
        (0, 1, 0, 1): (-0.12500, -0.12324),
        (0, 1, 1, 0): (-0.03125, -0.03258),
        (0, 1, 1, 1): (-0.18750, -0.18687),
        (1, 0, 0, 0): (0.03125, 0.02963),
        (1, 0, 0, 1): (-0.12500, -0.12726),
        (1, 0, 1, 0): (-0.03125, -0.02969),
        (1, 0, 1, 1): (-0.18750, -0.18984),
        (1, 1, 0, 0): (-0.03125, -0.02926),
        (1, 1, 0, 1): (-0.18750, -0.18685),
        (1, 1, 1, 0): (-0.09375, -0.09451),
    },
    (2, 2, 2, 6): {
        (0, 0, 0, 0): (0.07692, 0.07559),
        (0, 0, 0, 1): (-0.07692, -0.08017),
        (0, 0, 1, 0): (0.02564, 0.02468),
        (0, 0, 1, 1): (-0.12821, -0.12063),
        (0, 1, 0, 0): (0.02564, 0.02767),
        (0, 1, 0, 1): (-0.12821, -0.12937),
        (0, 1, 1, 0): (-0.02564, -0.02647),
        (0, 1, 1, 1): (-0.17949, -0.17727),
        (1, 0, 0, 0): (0.02564, 0.02685),
        (1, 0, 0, 1): (-0.12821, -0.12788),
        (1, 0, 1, 0): (-0.02564, -0.02531),
        (1, 0, 1, 1): (-0.17949, -0.18049),
        (1, 1, 0, 0): (-0.02564, -0.02604),
        (1, 1, 0, 1): (-0.17949, -0.18304),
        (1, 1, 1, 0): (-0.07692, -0.07709),
    },
    (2, 2, 3, 3): {
        (0, 0, 0, 0): (0.10345, 0.10329),
        (0, 0, 0, 1): (0.00000, -0.00144),
        (0, 0, 1, 0): (0.00000, 0.00040),
        (0, 0, 1, 1): (-0.10345, -0.10572),
        (0, 1, 0, 0): (0.03448, 0.03466),
        (0, 1, 0, 1): (-0.06897, -0.06929),
        (0, 1, 1, 0): (-0.06897, -0.06885),
        (0, 1, 1, 1): (-0.17241, -0.16785),
        (1, 0, 0, 0): (0.03448, 0.03469),
        (1, 0, 0, 1): (-0.06897, -0.06565),
        (1, 0, 1, 0): (-0.06897, -0.06943),
        (1, 0, 1, 1): (-0.17241, -0.17407),
        (1, 1, 0, 0): (-0.03448, -0.03484),
        (1, 1, 0, 1): (-0.13793, -0.13936),
        (1, 1, 1, 0): (-0.13793, -0.13785),
    },
    (2, 2, 3, 4): {
        (0, 0, 0, 0): (0.07500, None),
        (0, 0, 0, 1): (-0.02500, None),
        (0, 0, 1, 0): (0.00000, None),
        (0, 0, 1, 1): (-0.10000, None),
        (0, 1, 0, 0): (0.02500, None),
        (0, 1, 0, 1): (-0.07500, None),
        (0, 1, 1, 0): (-0.05000, None),
        (0, 1, 1, 1): (-0.15000, None),
        (1, 0, 0, 0): (0.02500, None),
        (1, 0, 0, 1): (-0.07500, None),
        (1, 0, 1, 0): (-0.05000, None),
        (1, 0, 1, 1): (-0.15000, None),
        (1, 1, 0, 0): (-0.02500, None),
        (1, 1, 0, 1): (-0.12500, None),
        (1, 1, 1, 0): (-0.10000, None),
    },
    (2, 2, 3, 5): {
        (0, 0, 0, 0): (0.05882, None),
        (0, 0, 0, 1): (-0.03922, None),
        (0, 0, 1, 0): (0.00000, None),
        (0, 0, 1, 1): (-0.09804, None),
        (0, 1, 0, 0): (0.01961, None),
        (0, 1, 0, 1): (-0.07843, None),
        (0, 1, 1, 0): (-0.03922, None),
        (0, 1, 1, 1): (-0.13725, None),
        (1, 0, 0, 0): (0.01961, None),
        (1, 0, 0, 1): (-0.07843, None),
        (1, 0, 1, 0): (-0.03922, None),
        (1, 0, 1, 1): (-0.13725, None),
        (1, 1, 0, 0): (-0.01961, None),
        (1, 1, 0, 1): (-0.11765, None),
        (1, 1, 1, 0): (-0.07843, None),
    },
    (2, 2, 3, 6): {
        (0, 0, 0, 0): (0.04839, None),
        (0, 0, 0, 1): (-0.04839, None),
        (0, 0, 1, 0): (0.00000, None),
        (0, 0, 1, 1): (-0.09677, None),
        (0, 1, 0, 0): (0.01613, None),
        (0, 1, 0, 1): (-0.08065, None),
        (0, 1, 1, 0): (-0.03226, None),
        (0, 1, 1, 1): (-0.12903, None),
        (1, 0, 0, 0): (0.01613, None),
        (1, 0, 0, 1): (-0.08065, None),
        (1, 0, 1, 0): (-0.03226, None),
        (1, 0, 1, 1): (-0.12903, None),
        (1, 1, 0, 0): (-0.01613, None),
        (1, 1, 0, 1): (-0.11290, None),
        (1, 1, 1, 0): (-0.06452, None),
    },
    (2, 2, 4, 4): {
        (0, 0, 0, 0): (0.05455, None),
        (0, 0, 0, 1): (-0.01818, None),
        (0, 0, 1, 0): (-0.01818, None),
        (0, 0, 1, 1): (-0.09091, None),
        (0, 1, 0, 0): (0.01818, None),
        (0, 1, 0, 1): (-0.05455, None),
        (0, 1, 1, 0): (-0.05455, None),
        (0, 1, 1, 1): (-0.12727, None),
        (1, 0, 0, 0): (0.01818, None),
        (1, 0, 0, 1): (-0.05455, None),
        (1, 0, 1, 0): (-0.05455, None),
        (1, 0, 1, 1): (-0.12727, None),
        (1, 1, 0, 0): (-0.01818, None),
        (1, 1, 0, 1): (-0.09091, None),
        (1, 1, 1, 0): (-0.09091, None),
    },
    (2, 2, 4, 5): {
        (0, 0, 0, 0): (0.04286, 0.04253),
        (0, 0, 0, 1): (-0.02857, -0.02829),
        (0, 0, 1, 0): (-0.01429, -0.01364),
        (0, 0, 1, 1): (-0.08571, -0.08496),
        (0, 1, 0, 0): (0.01429, 0.01435),
        (0, 1, 0, 1): (-0.05714, -0.05697),
        (0, 1, 1, 0): (-0.04286, -0.04344),
        (0, 1, 1, 1): (-0.11429, -0.11357),
        (1, 0, 0, 0): (0.01429, 0.01420),
        (1, 0, 0, 1): (-0.05714, -0.05671),
        (1, 0, 1, 0): (-0.04286, -0.04327),
        (1, 0, 1, 1): (-0.11429, -0.11327),
        (1, 1, 0, 0): (-0.01429, -0.01381),
        (1, 1, 0, 1): (-0.08571, -0.08717),
        (1, 1, 1, 0): (-0.07143, -0.07153),
    },
    (2, 2, 4, 6): {
        (0, 0, 0, 0): (0.03529, 0.03519),
        (0, 0, 0, 1): (-0.03529, -0.03554),
        (0, 0, 1, 0): (-0.01176, -0.01211),
        (0, 0, 1, 1): (-0.08235, -0.08401),
        (0, 1, 0, 0): (0.01176, 0.01187),
        (0, 1, 0, 1): (-0.05882, -0.05856),
        (0, 1, 1, 0): (-0.03529, -0.03466),
        (0, 1, 1, 1): (-0.10588, -0.10577),
        (1, 0, 0, 0): (0.01176, 0.01180),
        (1, 0, 0, 1): (-0.05882, -0.05813),
        (1, 0, 1, 0): (-0.03529, -0.03489),
        (1, 0, 1, 1): (-0.10588, -0.10475),
        (1, 1, 0, 0): (-0.01176, -0.01189),
        (1, 1, 0, 1): (-0.08235, -0.08265),
        (1, 1, 1, 0): (-0.05882, -0.05930),
    },
}

TABLE_A2 = {
    (2, 2): (0.23509, 4.00000, 0.94035),
    (2, 3): (0.32176, 3.00000, 0.96528),
    (2, 4): (0.36708, 2.66667, 0.97889),
    (2, 5): (0.38949, 2.50000, 0.97373),
    (2, 6): (0.40777, 2.40000, 0.97866),
    (2, 7): (0.41738, 2.33333, 0.97388),
    (2, 8): (0.43064, 2.28571, 0.98431),
    (3, 3): (0.43068, 2.25000, 0.96904),
    (3, 4): (0.48277, 2.00000, 0.96554),
    (3, 5): (0.51880, 1.87500, 0.97276),
    (3, 6): (0.54057, 1.80000, 0.97303),
    (3, 7): (0.56153, 1.75000, 0.98268),
    (3, 8): (0.57381, 1.71429, 0.98367),
    (4, 4): (0.54804, 1.77778, 0.97429),
    (4, 5): (0.59126, 1.66667, 0.98544),
    (4, 6): (0.61087, 1.60000, 0.97739),
    (4, 7): (0.62693, 1.55556, 0.97522),
    (4, 8): (0.64688, 1.52381, 0.98573),
    (5, 5): (0.63050, 1.56250, 0.98515),
    (5, 6): (0.65532, 1.50000, 0.98297),
    (5, 7): (0.67480, 1.45833, 0.98409),
    (5, 8): (0.68902, 1.42857, 0.98431),
    (6, 6): (0.68515, 1.44000, 0.98661),
    (6, 7): (0.70300, 1.40000, 0.98419),
    (6, 8): (0.71858, 1.37143, 0.98549),
    (7, 7): (0.72647, 1.36111, 0.98881),
    (7, 8): (0.74112, 1.33333, 0.98817),
    (8, 8): (0.75539, 1.30612, 0.98663),
}
TABLE_A3 = {
    (2, 2, 2): (0.48872, 2.00000, 0.97744),
    (2, 2, 3): (0.57026, 1.71429, 0.97759),
    (2, 2, 4): (0.61348, 1.60000, 0.98158),
    (2, 2, 5): (0.64367, 1.53846, 0.99026),
    (2, 2, 6): (0.65912, 1.50000, 0.98868),
    (2, 2, 7): (0.67175, 1.47368, 0.98995),
    (2, 2, 8): (0.68452, 1.45455, 0.99567),
    (2, 2, 9): (0.68814, 1.44000, 0.99092),
    (2, 3, 3): (0.65497, 1.50000, 0.98245),
    (2, 3, 4): (0.70181, 1.41176, 0.99080),
    (2, 3, 5): (0.72763, 1.36364, 0.99223),
    (2, 3, 6): (0.74207, 1.33333, 0.98943),
    (2, 3, 7): (0.75578, 1.31250, 0.99197),
    (2, 3, 8): (0.76527, 1.29730, 0.99278),
    (2, 3, 9): (0.77156, 1.28571, 0.99201),
    (2, 4, 4): (0.73829, 1.33333, 0.98439),
    (2, 4, 5): (0.76680, 1.29032, 0.98941),
    (2, 4, 6): (0.78504, 1.26316, 0.99162),
    (2, 4, 7): (0.79647, 1.24444, 0.99116),
    (2, 4, 8): (0.80636, 1.23077, 0.99244),
    (2, 4, 9): (0.81105, 1.22034, 0.98976),
    (2, 5, 5): (0.79486, 1.25000, 0.99358),
    (2, 5, 6): (0.81484, 1.22449, 0.99776),
    (2, 5, 7): (0.82580, 1.20690, 0.99666),
    (3, 3, 3): (0.73252, 1.35000, 0.98890),
    (3, 3, 4): (0.77458, 1.28571, 0.99588),
    (3, 3, 5): (0.79431, 1.25000, 0.99288),
    (3, 3, 6): (0.80813, 1.22727, 0.99179),
    (3, 4, 4): (0.80318, 1.23077, 0.98854),
    (3, 4, 5): (0.82471, 1.20000, 0.98965),
    (3, 4, 6): (0.84121, 1.18033, 0.99290),
    (3, 5, 5): (0.84618, 1.17188, 0.99161),
    (3, 5, 6): (0.86126, 1.15385, 0.99376),
    (3, 6, 6): (0.87668, 1.13684, 0.99664),
    (4, 4, 4): (0.83842, 1.18519, 0.99368),
    (5, 5, 5): (0.89275, 1.11607, 0.99637),
}
TABLE_A4 = {
    (2, 2, 2, 2): (0.67755, 1.45455, 0.98553),
    (2, 2, 2, 3): (0.74462, 1.33333, 0.99283),
    (2, 2, 2, 4): (0.77287, 1.28000, 0.98927),
    (2, 2, 2, 5): (0.79506, 1.25000, 0.99383),
    (2, 2, 2, 6): (0.81248, 1.23077, 0.99997),
    (2, 2, 3, 3): (0.79892, 1.24138, 0.99177),
    (2, 2, 3, 4): (0.82720, 1.20000, 0.99264),
    (2, 2, 3, 5): (0.84606, 1.17647, 0.99536),
    (2, 2, 3, 6): (0.85597, 1.16129, 0.99403),
    (2, 2, 4, 4): (0.85499, 1.16364, 0.99490),
    (2, 2, 4, 5): (0.86904, 1.14286, 0.99319),
    (2, 2, 4, 6): (0.88048, 1.12941, 0.99442),
    (2, 2, 2, 2, 2): (0.81174, 1.23077, 0.99907),
    (2, 2, 2, 2, 3): (0.84992, 1.17073, 0.99503),
    (2, 2, 2, 2, 2, 2): (0.88907, 1.12281, 0.99826),
    (2, 2, 2, 2, 2, 2, 2): (0.93641, 1.06667, 0.99884),
}
# second-factor prevalences -> maximum eigenvalue of the estimated covariance
TABLE_A5 = {
    ("1/4", "1/2", "1/4"): 0.98562262,
    ("1/5", "2/5", "2/5"): 0.96420697,
    ("1/5", "1/5", "3/5"): 0.98849695,
    ("1/6", "2/6", "3/6"): 0.99377636,
    ("1/7", "3/7", "3/7"): 0.99504833,
    ("1/7", "2/7", "4/7"): 1.00873787,
}

# (case, hypothesis) -> rejection rates and median diagnostics, N = 600
TABLE_1 = {
    ("case1", "null"): {"T_L": 0.0244, "T_RL": 0.0250, "T_SL": 0.0248,
                        "ratio_GtCovG_GtG": 0.2386, "ratio_GtG_psi": 0.0040,
                        "N_psi": 96.1297, "N_var_L": 96.4366, "N_B_RL": 96.2631},
    ("case1", "alt"): {"T_L": 0.9118, "T_RL": 0.9138, "T_SL": 0.9078,
                       "ratio_GtCovG_GtG": 0.2368, "ratio_GtG_psi": 0.0042,
                       "N_psi": 84.9293, "N_var_L": 87.0392, "N_B_RL": 85.0455},
    ("case2", "null"): {"T_L": 0.0032, "T_RL": 0.0242, "T_SL": 0.0270,
                        "ratio_GtCovG_GtG": 0.0628, "ratio_GtG_psi": 1.2379,
                        "N_psi": 59.7181, "N_var_L": 133.9290, "N_B_RL": 64.4555},
    ("case2", "alt"): {"T_L": 0.5972, "T_RL": 0.8716, "T_SL": 0.9802,
                       "ratio_GtCovG_GtG": 0.0584, "ratio_GtG_psi": 1.2347,
                       "N_psi": 57.1480, "N_var_L": 130.1270, "N_B_RL": 61.3901},
}

# correctly specified score model
TABLE_2 = {
    ("case1", "null"): {"T_S": 0.0244, "T_RS": 0.0248, "ratio_GtCovG_GtG": 0.2368,
                        "ratio_GtG_psi": 0.0040, "N_psi": 96.1297, "N_B": 95.9182,
                        "N_B_RS": 96.2631},
    ("case1", "alt"): {"T_S": 0.9130, "T_RS": 0.9138, "ratio_GtCovG_GtG": 0.2368,
                       "ratio_GtG_psi": 0.0042, "N_psi": 84.9293, "N_B": 86.2991,
                       "N_B_RS": 85.0455},
    ("case2", "null"): {"T_S": 0.0270, "T_RS": 0.0274, "ratio_GtCovG_GtG": 0.9200,
                        "ratio_GtG_psi": 0.0007, "N_psi": 132.0514, "N_B": 131.2738,
                        "N_B_RS": 132.2078},
    ("case2", "alt"): {"T_S": 0.9824, "T_RS": 0.9820, "ratio_GtCovG_GtG": 0.4585,
                       "ratio_GtG_psi": 0.0017, "N_psi": 119.1069, "N_B": 121.8008,
                       "N_B_RS": 119.2419},
}

# score model omitting the second factor
TABLE_3 = {
    ("case2", "null"): {"T_S": 0.0096, "T_RS": 0.0256, "ratio_GtCovG_GtG": 0.0031,
                        "ratio_GtG_psi": 0.4186, "N_psi": 98.6195, "N_B": 139.0959,
                        "N_B_RS": 98.8438},
    ("case2", "alt"): {"T_S": 0.8858, "T_RS": 0.9436, "ratio_GtCovG_GtG": 0.0038,
                       "ratio_GtG_psi": 0.4185, "N_psi": 91.8034, "N_B": 131.9277,
                       "N_B_RS": 91.9967},
}

# four binary factors, N = 1000
TABLE_4 = {
    "null": {"T_S": 0.0168, "T_RS": 0.0267, "T_L": 0.0093, "T_PL": 0.0165, "T_RPL": 0.0260},
    "alt": {"T_S": 0.8871, "T_RS": 0.9141, "T_L": 0.7911, "T_PL": 0.8864, "T_RPL": 0.9138},
}
