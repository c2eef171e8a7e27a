from hypothesis import settings

# Property tests must behave the same on every run and never trip the
# wall-clock deadline on slow CI boxes.
settings.register_profile("quditmem", deadline=None, max_examples=50, derandomize=True)
settings.load_profile("quditmem")
