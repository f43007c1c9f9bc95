from hypothesis import settings

# first calls load compiled kernels from the numba cache, so timings are uneven
settings.register_profile("default", deadline=None)
settings.load_profile("default")
