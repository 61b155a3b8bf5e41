"""
Quality-diversity runs, landscape features of elite archives, and their comparison
"""

import os

# kivy reads these on its first import, so they have to be in place before any
# submodule pulls in kivy.logger
for _name, _value in (
        ('KIVY_NO_ARGS', '1'),
        ('KIVY_NO_CONFIG', '1'),
        ('KIVY_NO_FILELOG', '1'),
        ('KIVY_LOG_MODE', 'MIXED'),
):
    os.environ.setdefault(_name, _value)

""" Problem domains """
DOMAINS = ('sphere', 'rastrigin', 'arm')
""" Behaviour functions """
BEHAVIOURS = ('subset', 'sigmoid', 'sine', 'arm')
""" Ways of producing the samples features are extracted from """
SAMPLERS = ('lhs', 'qd-gaussian', 'qd-isolinedd')
""" Genotype dimensions of the experiment grid """
DIMS = (2, 4, 8, 16, 32)
""" Archive sizes of the experiment grid """
ARCHIVE_SIZES = (100, 1000, 10000)

""" Search range of sphere and rastrigin genotypes """
SEARCH_BOUND = 5.0
""" Total link length of the planar arm """
ARM_REACH = 12.0

""" Evaluations per generation """
DEFAULT_BATCH = 100
""" Evaluations per run """
DEFAULT_BUDGET = 1_000_000
""" Replicates per experiment """
DEFAULT_RUNS = 30
""" Root seed of an experiment """
DEFAULT_BASE_SEED = 0

""" Gaussian mutation strength as a fraction of each dimension's range """
DEFAULT_GAUSSIAN_SIGMA = 0.01
""" IsoLineDD isotropic strength, in genotype units """
DEFAULT_ISOLINE_SIGMA1 = 0.01
""" IsoLineDD strength along the line joining the parents """
DEFAULT_ISOLINE_SIGMA2 = 0.2

""" Behaviour samples drawn per centroid when building the tessellation """
CVT_SAMPLES_PER_CELL = 50
""" Floor applied on top of CVT_SAMPLES_PER_CELL * k """
CVT_SAMPLE_FLOOR = 10_000
""" Upper cap on the tessellation sample size """
MAX_CVT_SAMPLES = 500_000
""" Lloyd iteration limit and relative inertia tolerance """
CVT_MAX_ITER = 100
CVT_TOLERANCE = 1e-9

""" Extra-evaluation budgets of the landscape features """
DEFAULT_CONV_PAIRS = 1000
DEFAULT_LOCAL_STARTS_PER_DIM = 50
MAX_LOCAL_STARTS = 400
DEFAULT_LOCAL_MAX_EVALS = 1000
DEFAULT_LEVEL_FOLDS = 10

""" Significant digits of every persisted float """
FLOAT_FORMAT = '.17g'
""" Environment variable capping harness threads """
THREADS_ENV = 'QDELA_THREADS'
""" Default output directory of experiment runs """
DEFAULT_OUT_DIR = 'results'
