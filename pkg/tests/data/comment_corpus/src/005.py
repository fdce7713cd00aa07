d = {'k': 2}
print(f"value: {d['k']}")  # lookup
