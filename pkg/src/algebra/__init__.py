# Exterior ring, cobordism maps and the arc algebras
