from hypothesis import HealthCheck, settings

# every property suite runs at least 200 cases from a fixed seed
settings.register_profile(
    "repo",
    max_examples=200,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")
