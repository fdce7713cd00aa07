width = 5
print(f"{'#' * width:>10}")  # ruler
