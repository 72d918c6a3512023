# Crossingless matchings, circle diagrams and chronologies
