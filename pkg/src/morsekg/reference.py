"""Published constant-mass bound-state energies (MeV) for H2, LiH and HCl.

The source prints six digits with decimal commas; values are transcribed with
decimal points.  The antiparticle levels are the negatives of these.
"""

TABLE_N = (0, 2, 4, 10, 20, 30, 40, 50)

PUBLISHED_LEVELS = {
    "H2": (663.819, 663.827, 663.835, 663.859, 663.899, 663.939, 663.979, 664.020),
    "LiH": (1159.420, 1159.430, 1159.440, 1159.470, 1159.520, 1159.570, 1159.620, 1159.670),
    "HCl": (1291.130, 1291.140, 1291.150, 1291.190, 1291.260, 1291.330, 1291.390, 1291.460),
}

# E_50 - E_0 as quoted (three decimals)
PUBLISHED_SPACINGS = {"H2": 0.201, "LiH": 0.250, "HCl": 0.330}

TABLE_TOLERANCE = 0.02  # MeV
SPACING_TOLERANCE = 0.005  # MeV
