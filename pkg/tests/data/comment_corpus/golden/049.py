fmt = f"{{literal}} {1}"
