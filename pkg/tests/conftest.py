from hypothesis import settings

# exact arithmetic makes single examples slow but deterministic
settings.register_profile("exact", deadline=None, max_examples=80)
settings.load_profile("exact")
