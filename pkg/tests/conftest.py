from hypothesis import HealthCheck, settings

settings.register_profile(
    "fenc",
    max_examples=50,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("fenc")
