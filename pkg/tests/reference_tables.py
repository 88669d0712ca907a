"""Reference result tables used as numeric oracles."""

# (classifier, smote, fs, smells) -> (printed F-measure, TP, FP, TN, FN)
MATRIX_RESULTS = {
    ("NB", "NO", "Annealing", "No"): (0.1318, 23, 161, 3330, 142),
    ("NB", "NO", "Annealing", "Yes"): (0.1149, 15, 81, 3410, 150),
    ("NB", "NO", "Elimination", "No"): (0.0, 0, 1, 3490, 165),
    ("NB", "NO", "Elimination", "Yes"): (0.0, 0, 0, 3491, 165),
    ("NB", "NO", "None", "No"): (0.1314, 31, 276, 3215, 134),
    ("NB", "NO", "None", "Yes"): (0.1389, 40, 371, 3120, 125),
    ("NB", "YES", "Annealing", "No"): (0.5474, 1497, 482, 3008, 1994),
    ("NB", "YES", "Annealing", "Yes"): (0.586, 1695, 599, 2891, 1796),
    ("NB", "YES", "Elimination", "No"): (0.5961, 1736, 598, 2892, 1755),
    ("NB", "YES", "Elimination", "Yes"): (0.6106, 1807, 621, 2869, 1684),
    ("NB", "YES", "None", "No"): (0.5424, 1476, 475, 3015, 2015),
    ("NB", "YES", "None", "Yes"): (0.5775, 1657, 591, 2899, 1834),
    ("PNN", "NO", "Annealing", "No"): (0.0, 0, 0, 3491, 165),
    ("PNN", "NO", "Annealing", "Yes"): (0.0, 0, 0, 3491, 165),
    ("PNN", "NO", "Elimination", "No"): (0.0, 0, 0, 3491, 165),
    ("PNN", "NO", "Elimination", "Yes"): (0.0, 0, 0, 3491, 165),
    ("PNN", "NO", "None", "No"): (0.0, 0, 0, 3491, 165),
    ("PNN", "NO", "None", "Yes"): (0.0, 0, 0, 3491, 165),
    ("PNN", "YES", "Annealing", "No"): (0.7313, 2187, 303, 3187, 1304),
    ("PNN", "YES", "Annealing", "Yes"): (0.7582, 2335, 333, 3157, 1156),
    ("PNN", "YES", "Elimination", "No"): (0.0, 0, 0, 3491, 165),
    ("PNN", "YES", "Elimination", "Yes"): (0.8051, 2568, 320, 3170, 923),
    ("PNN", "YES", "None", "No"): (0.7253, 2147, 282, 3208, 1344),
    ("PNN", "YES", "None", "Yes"): (0.7333, 2204, 316, 3174, 1287),
    ("RF", "NO", "Annealing", "No"): (0.0963, 9, 13, 3478, 156),
    ("RF", "NO", "Annealing", "Yes"): (0.1538, 15, 15, 3476, 150),
    ("RF", "NO", "Elimination", "No"): (0.1587, 15, 9, 3482, 150),
    ("RF", "NO", "Elimination", "Yes"): (0.1405, 13, 7, 3484, 152),
    ("RF", "NO", "None", "No"): (0.1429, 14, 17, 3474, 151),
    ("RF", "NO", "None", "Yes"): (0.1538, 15, 15, 3476, 150),
    ("RF", "YES", "Annealing", "No"): (0.9551, 3364, 189, 3301, 127),
    ("RF", "YES", "Annealing", "Yes"): (0.9696, 3407, 130, 3360, 84),
    ("RF", "YES", "Elimination", "No"): (0.9654, 3390, 142, 3348, 101),
    ("RF", "YES", "Elimination", "Yes"): (0.9713, 3435, 147, 3343, 56),
    ("RF", "YES", "None", "No"): (0.9601, 3383, 173, 3317, 108),
    ("RF", "YES", "None", "Yes"): (0.9696, 3407, 130, 3360, 84),
}

# dataset row -> (accuracy mean, kappa mean)
STUDY_MEANS = {
    "file metrics without FS": (0.9422, 0.8844),
    "warnings without FS": (0.676, 0.3518),
    "combined without FS": (0.9487, 0.8973),
    "file metrics with FS": (0.97, 0.9399),
    "warnings with FS": (0.8249, 0.6497),
    "combined with FS": (0.9791, 0.9582),
}

# first approach: one row per class, file LOC divided across its classes
CLASS_GRAIN_ROWS = [
    ("File1.cs", "Class1", 33, 3),
    ("File1.cs", "Class2", 33, 20),
    ("File1.cs", "Class3", 33, 6),
    ("File2.cs", "Class4", 30, 15),
]
# second approach: one row per file
FILE_GRAIN_ROWS = {"File1.cs": (100, 29), "File2.cs": (30, 15)}
